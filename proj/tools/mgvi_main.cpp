#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mgvi/bench.hpp"

namespace {

struct CommonFlags {
  double nu = 0.9, mu = 0.4, gamma = 1.9, beta0 = 1.0;
  double fixed_beta = 0.0;  // 0 = per-solver default
  double tol = 1e-6;
  int max_iter = 200000;
  double rho = 1.0;
  std::string out_dir;
  int lanes = 0;  // 0 = MGVI_THREADS / hardware default
  bool no_objective = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--nu", nu, "line-search constant in (0,1)");
    cmd->add_option("--mu", mu, "beta growth trigger in (0,nu)");
    cmd->add_option("--gamma", gamma, "relaxation in (0,2)");
    cmd->add_option("--beta0", beta0, "initial beta for the adaptive rule");
    cmd->add_option("--fixed-beta", fixed_beta,
                    "constant beta for pga-a2/pga-b2 (default: spectral rule)");
    cmd->add_option("--tol", tol, "stopping tolerance (inf-norm)");
    cmd->add_option("--max-iter", max_iter, "iteration cap");
    cmd->add_option("--rho", rho, "penalty for adlpmm");
    cmd->add_option("--out", out_dir, "directory for per-solver trace CSVs");
    cmd->add_option("--lanes", lanes, "parallel block lanes (default MGVI_THREADS)");
    cmd->add_flag("--no-objective", no_objective, "skip objective column in traces");
  }

  void fill(mgvi::ExperimentConfig& cfg) const {
    cfg.params.nu = nu;
    cfg.params.mu = mu;
    cfg.params.gamma = gamma;
    cfg.params.beta0 = beta0;
    if (fixed_beta > 0.0) cfg.params.fixed_beta = fixed_beta;
    cfg.params.tol_inf = tol;
    cfg.params.max_iter = max_iter;
    cfg.admm_params.rho = rho;
    cfg.admm_params.tol_succ = tol;
    cfg.admm_params.max_iter = max_iter;
    cfg.out_dir = out_dir;
    cfg.lanes = lanes > 0 ? lanes : mgvi::defaultLanes();
    cfg.record_objective = !no_objective;
  }
};

int runAndReport(const mgvi::ExperimentConfig& cfg) {
  mgvi::ExperimentResult result = mgvi::runExperiment(cfg);
  std::cout << mgvi::formatSummaryTable(result, /*include_time=*/true);
  for (const auto& row : result.rows) {
    if (!row.skipped && row.status != mgvi::SolveStatus::converged) return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mgvi: predictor-corrector solvers for monotone generalized "
               "variational inequalities"};
  app.require_subcommand(1);

  // --- bench ---
  CLI::App* bench = app.add_subcommand("bench", "run a benchmark experiment");
  bench->require_subcommand(1);

  int m = 1000, n = 1100;
  std::uint64_t seed = 1;
  double lambda = 1.0;
  std::string solvers_lasso = "ista,gem,pga-a1,pga-a2,pga-b1,pga-b2";
  std::string solvers_bp = "adlpmm,gem,pga-a1,pga-b1";
  CommonFlags lasso_flags, bp_flags;

  CLI::App* lasso = bench->add_subcommand("lasso", "l1-regularized least squares");
  lasso->add_option("--m", m, "rows of A");
  lasso->add_option("--n", n, "columns of A");
  lasso->add_option("--lambda", lambda, "l1 weight");
  lasso->add_option("--seed", seed, "instance seed");
  lasso->add_option("--solvers", solvers_lasso, "comma-separated solver list");
  lasso_flags.attach(lasso);

  CLI::App* bp = bench->add_subcommand("bp", "basis pursuit via the saddle lift");
  bp->add_option("--m", m, "rows of A");
  bp->add_option("--n", n, "columns of A");
  bp->add_option("--seed", seed, "instance seed");
  bp->add_option("--solvers", solvers_bp, "comma-separated solver list");
  bp_flags.attach(bp);

  // --- solve ---
  CLI::App* solve = app.add_subcommand("solve", "run one solver on an instance file");
  std::string instance_path, solver_name;
  CommonFlags solve_flags;
  solve->add_option("--instance", instance_path, "instance file path")->required();
  solve->add_option("--solver", solver_name, "solver name")->required();
  solve_flags.attach(solve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  mgvi::ExperimentConfig cfg;
  try {
    if (lasso->parsed()) {
      cfg.experiment = mgvi::ExperimentConfig::Kind::lasso;
      cfg.m = m;
      cfg.n = n;
      cfg.seed = seed;
      cfg.lambda_reg = lambda;
      cfg.solvers = mgvi::parseSolverList(solvers_lasso);
      lasso_flags.fill(cfg);
    } else if (bp->parsed()) {
      cfg.experiment = mgvi::ExperimentConfig::Kind::basis_pursuit;
      cfg.m = m;
      cfg.n = n;
      cfg.seed = seed;
      cfg.solvers = mgvi::parseSolverList(solvers_bp);
      bp_flags.fill(cfg);
    } else {
      cfg.experiment = mgvi::ExperimentConfig::Kind::custom_file;
      cfg.custom_path = instance_path;
      cfg.solvers = {mgvi::parseSolverName(solver_name)};
      solve_flags.fill(cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    return runAndReport(cfg);
  } catch (const mgvi::InstanceFileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  }
}
