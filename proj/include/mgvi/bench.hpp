#pragma once

#include <map>
#include <string>

#include "mgvi/baselines.hpp"
#include "mgvi/instance.hpp"
#include "mgvi/saddle.hpp"
#include "mgvi/solvers.hpp"

namespace mgvi {

enum class SolverKind { ista, gem, pga_a1, pga_a2, pga_b1, pga_b2, admm, adlpmm };

std::string solverName(SolverKind kind);
/// Accepts the CLI spellings "ista", "gem", "pga-a1", …, "adlpmm".
SolverKind parseSolverName(const std::string& name);
std::vector<SolverKind> parseSolverList(const std::string& csv);

struct ExperimentConfig {
  enum class Kind { lasso, basis_pursuit, custom_file };
  Kind experiment = Kind::lasso;
  int m = 1000;
  int n = 1100;
  uint64_t seed = 1;
  double lambda_reg = 1.0;
  std::vector<SolverKind> solvers;
  SolverParams params;  ///< base parameters for every solver
  std::map<SolverKind, SolverParams> overrides;
  AdmmParams admm_params;
  std::string custom_path;  ///< instance file for Kind::custom_file
  std::string out_dir;      ///< trace CSVs land here; empty disables traces
  bool record_objective = true;
  /// Solvers run sequentially by default for fair timing; set true (with
  /// timing off) to run them concurrently.
  bool concurrent_solvers = false;
  int lanes = 1;  ///< block-evaluation lanes for saddle problems
};

struct SolverSummary {
  SolverKind solver{};
  std::string name;
  bool skipped = false;
  std::string note;
  SolveStatus status = SolveStatus::max_iter;
  int iterations = 0;
  double wall_seconds = 0.0;
  /// ‖e(·, 1)‖_∞ of the final iterate under the instance's MGVI form,
  /// computed for every solver including the baselines.
  double final_residual_inf = 0.0;
  /// ‖Ax + By - c‖_∞ at the final iterate (basis pursuit / saddle only).
  std::optional<double> constraint_violation_inf;
  /// Sign pattern of the thresholded solution equals x_true's; absent when
  /// x_true is unknown.
  std::optional<bool> support_recovered;
  Vector x_primal;  ///< final primal iterate (x block for saddle problems)
  SolveResult result;
};

struct ExperimentResult {
  std::vector<SolverSummary> rows;
  Vector x_true;  ///< empty when unknown
};

/// Runs every requested solver on the shared instance, writes one trace CSV
/// per solver into cfg.out_dir, and returns the summary rows in request
/// order. Inapplicable solvers are marked skipped. Identical configs give
/// identical results except for the wall-time fields.
ExperimentResult runExperiment(const ExperimentConfig& cfg);

/// One line per solver; wall-time column included only when asked, so two
/// runs can be compared for bit-identical output.
std::string formatSummaryTable(const ExperimentResult& result,
                               bool include_time = true);

/// Thresholds |xᵢ| > threshold, then compares the sign pattern against
/// x_true (whose entries are exactly 0 or ±1).
bool supportRecovered(const Vector& x, const Vector& x_true,
                      double threshold = 1e-4);

/// Lane count from the MGVI_THREADS environment variable, defaulting to the
/// hardware concurrency.
int defaultLanes();

}  // namespace mgvi
