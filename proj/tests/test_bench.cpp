#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "test_util.hpp"

using namespace mgvi;

namespace {

namespace fs = std::filesystem;

std::vector<SolverKind> lassoSix() {
  return {SolverKind::ista,   SolverKind::gem,    SolverKind::pga_a1,
          SolverKind::pga_a2, SolverKind::pga_b1, SolverKind::pga_b2};
}

int countCsvRows(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  int rows = -1;  // header does not count
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  return rows;
}

}  // namespace

TEST_SUITE_BEGIN("bench");

TEST_CASE("solver names round-trip and reject unknowns") {
  for (SolverKind k : {SolverKind::ista, SolverKind::gem, SolverKind::pga_a1,
                       SolverKind::pga_a2, SolverKind::pga_b1, SolverKind::pga_b2,
                       SolverKind::admm, SolverKind::adlpmm}) {
    CHECK(parseSolverName(solverName(k)) == k);
  }
  CHECK(parseSolverName("PGA_A1") == SolverKind::pga_a1);
  CHECK_THROWS_AS(parseSolverName("fista"), std::invalid_argument);
  CHECK(parseSolverList("gem,ista").size() == 2);
  CHECK_THROWS_AS(parseSolverList(""), std::invalid_argument);
}

TEST_CASE("support recovery thresholds tiny entries") {
  Vector x_true{0, 1, 0, -1};
  CHECK(supportRecovered({1e-9, 0.98, -5e-5, -1.01}, x_true));
  CHECK_FALSE(supportRecovered({0.5, 0.98, 0.0, -1.01}, x_true));   // spurious
  CHECK_FALSE(supportRecovered({0.0, 0.98, 0.0, 1.01}, x_true));    // sign flip
  CHECK_FALSE(supportRecovered({0.0, 5e-5, 0.0, -1.01}, x_true));   // missed
}

TEST_CASE("lasso experiment produces consistent summaries and traces") {
  const std::string out = (fs::temp_directory_path() / "mgvi_bench_out").string();
  fs::remove_all(out);

  ExperimentConfig cfg;
  cfg.experiment = ExperimentConfig::Kind::lasso;
  cfg.m = 40;
  cfg.n = 50;
  cfg.seed = 3;
  cfg.solvers = lassoSix();
  cfg.out_dir = out;
  ExperimentResult result = runExperiment(cfg);

  REQUIRE(result.rows.size() == 6);
  for (const SolverSummary& row : result.rows) {
    CHECK_FALSE(row.skipped);
    CHECK(row.status == SolveStatus::converged);
    CHECK(row.final_residual_inf < cfg.params.tol_inf);
    // Summary iteration counts equal the trace-file row counts.
    const std::string csv = (fs::path(out) / (row.name + "_trace.csv")).string();
    CHECK(countCsvRows(csv) == row.iterations);
    // Rows are strictly increasing in k and end below tolerance.
    REQUIRE(!row.result.trace.empty());
    for (size_t i = 0; i + 1 < row.result.trace.size(); ++i) {
      CHECK(row.result.trace[i].k + 1 == row.result.trace[i + 1].k);
    }
    CHECK(row.result.trace.back().residual_inf < cfg.params.tol_inf);
    // The objective column is populated for lasso runs.
    CHECK(row.result.trace.back().objective.has_value());
  }
}

TEST_CASE("experiments are deterministic modulo wall time") {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentConfig::Kind::lasso;
  cfg.m = 30;
  cfg.n = 40;
  cfg.seed = 9;
  cfg.solvers = lassoSix();
  ExperimentResult a = runExperiment(cfg);
  ExperimentResult b = runExperiment(cfg);
  CHECK(formatSummaryTable(a, false) == formatSummaryTable(b, false));
  for (size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].x_primal == b.rows[i].x_primal);
    CHECK(a.rows[i].iterations == b.rows[i].iterations);
  }
}

TEST_CASE("basis pursuit experiment runs the applicable solvers") {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentConfig::Kind::basis_pursuit;
  cfg.m = 24;
  cfg.n = 32;
  cfg.seed = 4;
  cfg.solvers = {SolverKind::adlpmm, SolverKind::gem, SolverKind::pga_a1,
                 SolverKind::pga_b1, SolverKind::pga_a2, SolverKind::ista};
  ExperimentResult result = runExperiment(cfg);

  REQUIRE(result.rows.size() == 6);
  for (size_t i = 0; i < 4; ++i) {
    const SolverSummary& row = result.rows[i];
    CHECK_FALSE(row.skipped);
    CHECK(row.status == SolveStatus::converged);
    REQUIRE(row.support_recovered.has_value());
    CHECK(*row.support_recovered);
    REQUIRE(row.constraint_violation_inf.has_value());
    CHECK(*row.constraint_violation_inf < 1e-4);
  }
  CHECK(result.rows[4].skipped);  // pga-a2 inapplicable
  CHECK(result.rows[4].note.find("not applicable") != std::string::npos);
  CHECK(result.rows[5].skipped);  // ista inapplicable
}

TEST_CASE("the m = n = 1 instance runs through a custom file") {
  // ½(x-3)² + |x|: the 1-d hand oracle, every solver lands on 2 quickly.
  const std::string path =
      (fs::temp_directory_path() / "mgvi_oracle_1d.txt").string();
  LassoInstance inst;
  inst.A = DenseMatrix(1, 1, {1.0});
  inst.b = {3.0};
  inst.x_true = {};
  inst.lambda_reg = 1.0;
  writeInstanceFile(path, inst);

  ExperimentConfig cfg;
  cfg.experiment = ExperimentConfig::Kind::custom_file;
  cfg.custom_path = path;
  cfg.solvers = lassoSix();
  ExperimentResult result = runExperiment(cfg);
  for (const SolverSummary& row : result.rows) {
    CHECK_FALSE(row.skipped);
    CHECK(row.status == SolveStatus::converged);
    CHECK(row.iterations <= 60);
    CHECK(std::abs(row.x_primal[0] - 2.0) < 1e-5);
  }
}

TEST_CASE("custom saddle files drive solveSaddle") {
  LassoInstance gen = generateLassoInstance(10, 14, 21);
  SaddleInstance sd;
  sd.theta1 = {ThetaSpec::Kind::l1, 1.0};
  sd.theta2 = {ThetaSpec::Kind::zero, 1.0};
  sd.A = gen.A;
  sd.B = DenseMatrix();
  sd.c = gen.b;
  const std::string path =
      (fs::temp_directory_path() / "mgvi_saddle_custom.txt").string();
  writeInstanceFile(path, sd);

  ExperimentConfig cfg;
  cfg.experiment = ExperimentConfig::Kind::custom_file;
  cfg.custom_path = path;
  cfg.solvers = {SolverKind::gem, SolverKind::adlpmm};
  ExperimentResult result = runExperiment(cfg);
  CHECK(result.rows[0].status == SolveStatus::converged);
  CHECK(result.rows[1].status == SolveStatus::converged);
}

TEST_CASE("concurrent solver runs match the sequential results") {
  ExperimentConfig cfg;
  cfg.experiment = ExperimentConfig::Kind::lasso;
  cfg.m = 30;
  cfg.n = 40;
  cfg.seed = 10;
  cfg.solvers = lassoSix();
  ExperimentResult seq = runExperiment(cfg);
  cfg.concurrent_solvers = true;
  ExperimentResult con = runExperiment(cfg);
  CHECK(formatSummaryTable(seq, false) == formatSummaryTable(con, false));
}

TEST_CASE("empty solver lists are rejected") {
  ExperimentConfig cfg;
  cfg.solvers = {};
  CHECK_THROWS_AS(runExperiment(cfg), std::invalid_argument);
}

TEST_SUITE_END();
