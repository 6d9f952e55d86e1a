#include "mgvi/bench.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "mgvi/prox.hpp"

namespace mgvi {

std::string solverName(SolverKind kind) {
  switch (kind) {
    case SolverKind::ista: return "ista";
    case SolverKind::gem: return "gem";
    case SolverKind::pga_a1: return "pga-a1";
    case SolverKind::pga_a2: return "pga-a2";
    case SolverKind::pga_b1: return "pga-b1";
    case SolverKind::pga_b2: return "pga-b2";
    case SolverKind::admm: return "admm";
    case SolverKind::adlpmm: return "adlpmm";
  }
  return "unknown";
}

SolverKind parseSolverName(const std::string& name) {
  std::string s = name;
  for (char& ch : s) {
    if (ch == '_') ch = '-';
    ch = char(std::tolower(static_cast<unsigned char>(ch)));
  }
  if (s == "ista") return SolverKind::ista;
  if (s == "gem") return SolverKind::gem;
  if (s == "pga-a1") return SolverKind::pga_a1;
  if (s == "pga-a2") return SolverKind::pga_a2;
  if (s == "pga-b1") return SolverKind::pga_b1;
  if (s == "pga-b2") return SolverKind::pga_b2;
  if (s == "admm") return SolverKind::admm;
  if (s == "adlpmm" || s == "ad-lpmm") return SolverKind::adlpmm;
  throw std::invalid_argument("unknown solver '" + name + "'");
}

std::vector<SolverKind> parseSolverList(const std::string& csv) {
  std::vector<SolverKind> out;
  std::string token;
  std::istringstream ss(csv);
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) out.push_back(parseSolverName(token));
  }
  if (out.empty()) throw std::invalid_argument("empty solver list");
  return out;
}

int defaultLanes() {
  if (const char* env = std::getenv("MGVI_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return int(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(hw) : 1;
}

bool supportRecovered(const Vector& x, const Vector& x_true, double threshold) {
  if (x.size() != x_true.size()) return false;
  for (size_t i = 0; i < x.size(); ++i) {
    const int sx = std::abs(x[i]) > threshold ? (x[i] > 0.0 ? 1 : -1) : 0;
    const int st = x_true[i] > 0.0 ? 1 : (x_true[i] < 0.0 ? -1 : 0);
    if (sx != st) return false;
  }
  return true;
}

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

std::string fmtG(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmtE(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void writeTraceCsv(const std::string& path, const SolveResult& result,
                   const std::vector<double>& seconds) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << "k,beta,r_k,alpha_star,residual_inf,objective,wall_time_s\n";
  for (size_t i = 0; i < result.trace.size(); ++i) {
    const IterationRecord& rec = result.trace[i];
    out << rec.k << ',' << fmtG(rec.beta) << ',';
    if (rec.r_k) out << fmtG(*rec.r_k);
    out << ',';
    if (rec.alpha_star) out << fmtG(*rec.alpha_star);
    out << ',' << fmtG(rec.residual_inf) << ',';
    if (rec.objective) out << fmtG(*rec.objective);
    out << ',';
    char buf[32];
    const double t = i < seconds.size() ? seconds[i]
                     : (seconds.empty() ? 0.0 : seconds.back());
    std::snprintf(buf, sizeof buf, "%.6f", t);
    out << buf << "\n";
  }
}

/// Shared problem data prepared once per experiment.
struct LassoContext {
  const LassoInstance* inst = nullptr;
  MgviProblem problem;  // F(x) = Mx + q with M = AᵀA, q = -Aᵀb
  double lambda_max = 0.0;
  Vector x0;
};

LassoContext makeLassoContext(const LassoInstance& inst) {
  LassoContext ctx;
  ctx.inst = &inst;
  DenseMatrix M = gramMatrix(inst.A);
  SpectralEstimate est = spectralNormEstimate(M, 1e-9, 1000);
  ctx.lambda_max = est.value;
  Vector q = matVecTranspose(inst.A, inst.b);
  for (double& v : q) v = -v;
  ctx.problem.theta = l1Prox(inst.lambda_reg);
  ctx.problem.f = MonotoneOperator::affine(std::move(M), std::move(q));
  ctx.problem.dim = inst.A.cols();
  ctx.x0.assign(size_t(inst.A.cols()), 1.0);
  return ctx;
}

struct SaddleContext {
  std::unique_ptr<SaddleProblem> sp;
  MgviProblem lifted;  // single-lane view for residual reporting
  SaddlePoint z0;
  Vector x_true;  // may be empty
};

SaddleContext makeBpContext(const DenseMatrix& A, const Vector& b,
                            Vector x_true) {
  SaddleContext ctx;
  ctx.sp = std::make_unique<SaddleProblem>(
      SaddleProblem::singleBlock(l1Prox(1.0), A, b));
  ctx.lifted = lift(*ctx.sp, 1);
  ctx.z0.x.assign(size_t(ctx.sp->n()), 1.0);
  ctx.z0.lambda.assign(size_t(ctx.sp->m()), 0.0);
  ctx.x_true = std::move(x_true);
  return ctx;
}

SaddleContext makeSaddleContext(const SaddleInstance& inst) {
  SaddleContext ctx;
  ctx.sp = std::make_unique<SaddleProblem>(makeProx(inst.theta1),
                                           makeProx(inst.theta2), inst.A,
                                           inst.B, inst.c);
  ctx.lifted = lift(*ctx.sp, 1);
  ctx.z0.x.assign(size_t(ctx.sp->n()), 1.0);
  ctx.z0.y.assign(size_t(ctx.sp->q()), 1.0);
  ctx.z0.lambda.assign(size_t(ctx.sp->m()), 0.0);
  return ctx;
}

SolverParams paramsFor(const ExperimentConfig& cfg, SolverKind kind) {
  auto it = cfg.overrides.find(kind);
  return it != cfg.overrides.end() ? it->second : cfg.params;
}

struct TraceTimer {
  Clock::time_point t0 = Clock::now();
  std::vector<double> seconds;
  void onIteration() {
    seconds.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
  }
};

SolveHooks makeHooks(TraceTimer& timer, std::function<double(const Vector&)> objective) {
  SolveHooks hooks;
  hooks.objective = std::move(objective);
  hooks.observer = [&timer](const IterationView&) { timer.onIteration(); };
  return hooks;
}

void runLassoSolver(const ExperimentConfig& cfg, const LassoContext& ctx,
                    SolverSummary& row) {
  const LassoInstance& inst = *ctx.inst;
  SolverParams prm = paramsFor(cfg, row.solver);

  std::function<double(const Vector&)> objective;
  if (cfg.record_objective) {
    objective = [&inst](const Vector& x) {
      Vector r = matVec(inst.A, x);
      for (size_t i = 0; i < r.size(); ++i) r[i] -= inst.b[i];
      double l1 = 0.0;
      for (double v : x) l1 += std::abs(v);
      return 0.5 * normTwoSquared(r) + inst.lambda_reg * l1;
    };
  }
  TraceTimer timer;
  SolveHooks hooks = makeHooks(timer, std::move(objective));

  const Clock::time_point start = Clock::now();
  switch (row.solver) {
    case SolverKind::ista:
      row.result = solveIsta(inst.A, inst.b, inst.lambda_reg, std::nullopt,
                             ctx.x0, prm.tol_inf, prm.max_iter, hooks);
      break;
    case SolverKind::gem:
      row.result = solveGem(ctx.problem, prm, ctx.x0, hooks);
      break;
    case SolverKind::pga_a1:
      row.result = solvePgaA1(ctx.problem, prm, ctx.x0, hooks);
      break;
    case SolverKind::pga_a2:
      if (!prm.fixed_beta) prm.fixed_beta = 1.0 / ctx.lambda_max;
      row.result = solvePgaA2(ctx.problem, prm, ctx.x0, hooks);
      break;
    case SolverKind::pga_b1:
      row.result = solvePgaB1(ctx.problem, prm, ctx.x0, hooks);
      break;
    case SolverKind::pga_b2:
      if (!prm.fixed_beta) prm.fixed_beta = 0.8 / ctx.lambda_max;
      row.result = solvePgaB2(ctx.problem, prm, ctx.x0, hooks);
      break;
    default:
      row.skipped = true;
      row.note = "not applicable: the lasso experiment has no constraint blocks";
      return;
  }
  row.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  row.status = row.result.status;
  row.iterations = row.result.iterations();
  row.x_primal = row.result.x_final;
  row.final_residual_inf = normInf(residual(ctx.problem, row.result.x_final, 1.0));
  if (!inst.x_true.empty()) {
    row.support_recovered = supportRecovered(row.x_primal, inst.x_true);
  }
  if (!cfg.out_dir.empty()) {
    writeTraceCsv((fs::path(cfg.out_dir) / (row.name + "_trace.csv")).string(),
                  row.result, timer.seconds);
  }
}

void runSaddleSolver(const ExperimentConfig& cfg, const SaddleContext& ctx,
                     SolverSummary& row) {
  const SaddleProblem& sp = *ctx.sp;
  SolverParams prm = paramsFor(cfg, row.solver);

  std::function<double(const Vector&)> objective;
  if (cfg.record_objective && ctx.lifted.theta.value) {
    const auto& theta = ctx.lifted.theta;
    objective = [&theta](const Vector& z) { return theta.value(z); };
  }
  TraceTimer timer;
  SolveHooks hooks = makeHooks(timer, std::move(objective));

  const Clock::time_point start = Clock::now();
  switch (row.solver) {
    case SolverKind::gem:
      row.result = solveSaddle(sp, SaddleMethod::gem, prm, ctx.z0, cfg.lanes, hooks);
      break;
    case SolverKind::pga_a1:
      row.result = solveSaddle(sp, SaddleMethod::pga_a1, prm, ctx.z0, cfg.lanes, hooks);
      break;
    case SolverKind::pga_b1:
      row.result = solveSaddle(sp, SaddleMethod::pga_b1, prm, ctx.z0, cfg.lanes, hooks);
      break;
    case SolverKind::adlpmm: {
      AdmmParams ap = cfg.admm_params;
      row.result = solveAdlpmm(sp, ap, ctx.z0, hooks);
      break;
    }
    case SolverKind::ista:
      row.skipped = true;
      row.note = "not applicable: ista requires an unconstrained lasso instance";
      return;
    case SolverKind::pga_a2:
    case SolverKind::pga_b2:
      row.skipped = true;
      row.note = "not applicable: lifted saddle operator is skew, not symmetric affine";
      return;
    case SolverKind::admm:
      row.skipped = true;
      row.note = "not applicable: subproblems have no closed form here";
      return;
  }
  row.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  row.status = row.result.status;
  row.iterations = row.result.iterations();
  SaddlePoint zf = splitPoint(sp, row.result.x_final);
  row.x_primal = zf.x;
  if (row.solver == SolverKind::adlpmm) {
    // ADMM-family multipliers carry the opposite sign from the lifted
    // saddle form (λ update +ρ(Ax+By-c) vs λ̃ = λ - β(Ax+By-c)); flip it
    // so the reported residual measures the same MGVI point.
    SaddlePoint flipped = zf;
    for (double& v : flipped.lambda) v = -v;
    row.final_residual_inf =
        normInf(residual(ctx.lifted, concatPoint(flipped), 1.0));
  } else {
    row.final_residual_inf = normInf(residual(ctx.lifted, row.result.x_final, 1.0));
  }
  Vector cres(sp.m(), 0.0);
  if (sp.n() > 0) cres = matVec(sp.A(), zf.x);
  if (sp.q() > 0) {
    Vector by = matVec(sp.B(), zf.y);
    for (int i = 0; i < sp.m(); ++i) cres[i] += by[i];
  }
  for (int i = 0; i < sp.m(); ++i) cres[i] -= sp.c()[i];
  row.constraint_violation_inf = normInf(cres);
  if (!ctx.x_true.empty() && ctx.x_true.size() == row.x_primal.size()) {
    row.support_recovered = supportRecovered(row.x_primal, ctx.x_true);
  }
  if (!cfg.out_dir.empty()) {
    writeTraceCsv((fs::path(cfg.out_dir) / (row.name + "_trace.csv")).string(),
                  row.result, timer.seconds);
  }
}

}  // namespace

ExperimentResult runExperiment(const ExperimentConfig& cfg) {
  if (cfg.solvers.empty()) {
    throw std::invalid_argument("runExperiment: solver list is empty");
  }
  validate(cfg.params);
  if (!cfg.out_dir.empty()) fs::create_directories(cfg.out_dir);

  ExperimentResult result;
  result.rows.resize(cfg.solvers.size());
  for (size_t i = 0; i < cfg.solvers.size(); ++i) {
    result.rows[i].solver = cfg.solvers[i];
    result.rows[i].name = solverName(cfg.solvers[i]);
  }

  // Materialize the instance.
  std::optional<LassoInstance> lasso;
  std::optional<SaddleContext> saddle_ctx;
  std::optional<LassoContext> lasso_ctx;

  switch (cfg.experiment) {
    case ExperimentConfig::Kind::lasso:
      lasso = generateLassoInstance(cfg.m, cfg.n, cfg.seed, cfg.lambda_reg);
      break;
    case ExperimentConfig::Kind::basis_pursuit: {
      LassoInstance gen = generateLassoInstance(cfg.m, cfg.n, cfg.seed, 1.0);
      saddle_ctx = makeBpContext(gen.A, gen.b, std::move(gen.x_true));
      break;
    }
    case ExperimentConfig::Kind::custom_file: {
      LoadedInstance inst = loadInstanceFile(cfg.custom_path);
      if (auto* li = std::get_if<LassoInstance>(&inst)) {
        lasso = std::move(*li);
      } else if (auto* bp = std::get_if<BpInstance>(&inst)) {
        saddle_ctx = makeBpContext(bp->A, bp->b, std::move(bp->x_true));
      } else {
        saddle_ctx = makeSaddleContext(std::get<SaddleInstance>(inst));
      }
      break;
    }
  }
  if (lasso) {
    lasso_ctx = makeLassoContext(*lasso);
    result.x_true = lasso->x_true;
  } else {
    result.x_true = saddle_ctx->x_true;
  }

  auto runOne = [&](SolverSummary& row) {
    if (lasso_ctx) {
      runLassoSolver(cfg, *lasso_ctx, row);
    } else {
      runSaddleSolver(cfg, *saddle_ctx, row);
    }
  };

  if (cfg.concurrent_solvers) {
    std::vector<std::thread> threads;
    threads.reserve(result.rows.size());
    for (auto& row : result.rows) threads.emplace_back([&] { runOne(row); });
    for (auto& t : threads) t.join();
  } else {
    for (auto& row : result.rows) runOne(row);
  }
  return result;
}

std::string formatSummaryTable(const ExperimentResult& result,
                               bool include_time) {
  std::ostringstream out;
  auto col = [&](const std::string& s, size_t w) {
    out << s;
    for (size_t i = s.size(); i < w; ++i) out << ' ';
  };
  col("solver", 10);
  col("status", 12);
  col("iters", 9);
  if (include_time) col("wall_s", 10);
  col("resid_inf", 13);
  col("constraint", 13);
  col("recovered", 11);
  out << "note\n";
  for (const SolverSummary& row : result.rows) {
    col(row.name, 10);
    if (row.skipped) {
      col("skipped", 12);
      col("-", 9);
      if (include_time) col("-", 10);
      col("-", 13);
      col("-", 13);
      col("-", 11);
      out << row.note << "\n";
      continue;
    }
    col(statusName(row.status), 12);
    col(std::to_string(row.iterations), 9);
    if (include_time) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2f", row.wall_seconds);
      col(buf, 10);
    }
    col(fmtE(row.final_residual_inf), 13);
    col(row.constraint_violation_inf ? fmtE(*row.constraint_violation_inf) : "-", 13);
    col(row.support_recovered ? (*row.support_recovered ? "yes" : "no") : "-", 11);
    out << row.note << "\n";
  }
  return out.str();
}

}  // namespace mgvi
