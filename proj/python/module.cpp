#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mgvi/bench.hpp"
#include "mgvi/prox.hpp"

namespace py = pybind11;

namespace {

using mgvi::DenseMatrix;
using mgvi::Vector;

Vector toVector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a 1-d array");
  return Vector(a.data(), a.data() + a.shape(0));
}

DenseMatrix toMatrix(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-d array");
  std::vector<double> entries(a.data(), a.data() + a.size());
  return DenseMatrix(int(a.shape(0)), int(a.shape(1)), std::move(entries));
}

py::array_t<double> fromVector(const Vector& v) {
  return py::array_t<double>(py::ssize_t(v.size()), v.data());  // copies
}

py::array_t<double> fromMatrix(const DenseMatrix& M) {
  const std::vector<py::ssize_t> shape{M.rows(), M.cols()};
  const std::vector<py::ssize_t> strides{
      py::ssize_t(sizeof(double)) * M.cols(), py::ssize_t(sizeof(double))};
  return py::array_t<double>(shape, strides, M.entries().data());  // copies
}

mgvi::SolverParams makeParams(double nu, double mu, double gamma, double beta0,
                              std::optional<double> fixed_beta, double tol,
                              int max_iter) {
  mgvi::SolverParams p;
  p.nu = nu;
  p.mu = mu;
  p.gamma = gamma;
  p.beta0 = beta0;
  p.fixed_beta = fixed_beta;
  p.tol_inf = tol;
  p.max_iter = max_iter;
  return p;
}

py::dict summarize(const mgvi::SolveResult& result) {
  py::dict out;
  out["x"] = fromVector(result.x_final);
  out["status"] = mgvi::statusName(result.status);
  out["iterations"] = result.iterations();
  if (!result.trace.empty()) {
    out["residual_inf"] = result.trace.back().residual_inf;
  }
  return out;
}

py::dict solveLasso(py::array_t<double, py::array::c_style | py::array::forcecast> A_in,
                    py::array_t<double, py::array::c_style | py::array::forcecast> b_in,
                    double lambda_reg, const std::string& solver, double nu,
                    double mu, double gamma, double beta0,
                    std::optional<double> fixed_beta, double tol, int max_iter) {
  DenseMatrix A = toMatrix(A_in);
  Vector b = toVector(b_in);
  mgvi::SolverParams prm =
      makeParams(nu, mu, gamma, beta0, fixed_beta, tol, max_iter);
  const mgvi::SolverKind kind = mgvi::parseSolverName(solver);

  Vector x0(size_t(A.cols()), 1.0);

  if (kind == mgvi::SolverKind::ista) {
    mgvi::SolveResult r = mgvi::solveIsta(A, b, lambda_reg, std::nullopt, x0,
                                          prm.tol_inf, prm.max_iter);
    return summarize(r);
  }

  DenseMatrix M = mgvi::gramMatrix(A);
  const double lambda_max = mgvi::spectralNormEstimate(M, 1e-9, 1000).value;
  Vector q = mgvi::matVecTranspose(A, b);
  for (double& v : q) v = -v;
  mgvi::MgviProblem problem;
  problem.theta = mgvi::l1Prox(lambda_reg);
  problem.f = mgvi::MonotoneOperator::affine(std::move(M), std::move(q));
  problem.dim = A.cols();

  mgvi::SolveResult r;
  switch (kind) {
    case mgvi::SolverKind::gem: r = mgvi::solveGem(problem, prm, x0); break;
    case mgvi::SolverKind::pga_a1: r = mgvi::solvePgaA1(problem, prm, x0); break;
    case mgvi::SolverKind::pga_a2:
      if (!prm.fixed_beta) prm.fixed_beta = 1.0 / lambda_max;
      r = mgvi::solvePgaA2(problem, prm, x0);
      break;
    case mgvi::SolverKind::pga_b1: r = mgvi::solvePgaB1(problem, prm, x0); break;
    case mgvi::SolverKind::pga_b2:
      if (!prm.fixed_beta) prm.fixed_beta = 0.8 / lambda_max;
      r = mgvi::solvePgaB2(problem, prm, x0);
      break;
    default:
      throw std::invalid_argument("solver '" + solver + "' is not available for lasso");
  }
  py::dict out = summarize(r);
  out["residual_inf"] = mgvi::normInf(mgvi::residual(problem, r.x_final, 1.0));
  return out;
}

py::dict solveBasisPursuit(
    py::array_t<double, py::array::c_style | py::array::forcecast> A_in,
    py::array_t<double, py::array::c_style | py::array::forcecast> b_in,
    const std::string& solver, double nu, double mu, double gamma, double beta0,
    double tol, int max_iter, double rho, int lanes) {
  DenseMatrix A = toMatrix(A_in);
  Vector b = toVector(b_in);
  mgvi::SolverParams prm =
      makeParams(nu, mu, gamma, beta0, std::nullopt, tol, max_iter);
  const mgvi::SolverKind kind = mgvi::parseSolverName(solver);

  mgvi::SaddleProblem sp =
      mgvi::SaddleProblem::singleBlock(mgvi::l1Prox(1.0), A, b);
  mgvi::SaddlePoint z0;
  z0.x.assign(size_t(sp.n()), 1.0);
  z0.lambda.assign(size_t(sp.m()), 0.0);

  mgvi::SolveResult r;
  switch (kind) {
    case mgvi::SolverKind::gem:
      r = mgvi::solveSaddle(sp, mgvi::SaddleMethod::gem, prm, z0, lanes);
      break;
    case mgvi::SolverKind::pga_a1:
      r = mgvi::solveSaddle(sp, mgvi::SaddleMethod::pga_a1, prm, z0, lanes);
      break;
    case mgvi::SolverKind::pga_b1:
      r = mgvi::solveSaddle(sp, mgvi::SaddleMethod::pga_b1, prm, z0, lanes);
      break;
    case mgvi::SolverKind::adlpmm: {
      mgvi::AdmmParams ap;
      ap.rho = rho;
      ap.tol_succ = tol;
      ap.max_iter = max_iter;
      r = mgvi::solveAdlpmm(sp, ap, z0);
      break;
    }
    default:
      throw std::invalid_argument("solver '" + solver +
                                  "' is not available for basis pursuit");
  }
  mgvi::SaddlePoint zf = mgvi::splitPoint(sp, r.x_final);
  Vector cres = mgvi::matVec(A, zf.x);
  for (size_t i = 0; i < cres.size(); ++i) cres[i] -= b[i];

  py::dict out;
  out["x"] = fromVector(zf.x);
  out["dual"] = fromVector(zf.lambda);
  out["status"] = mgvi::statusName(r.status);
  out["iterations"] = r.iterations();
  out["constraint_violation_inf"] = mgvi::normInf(cres);
  return out;
}

}  // namespace

PYBIND11_MODULE(_mgvi, m) {
  m.doc() = "Predictor-corrector solvers for monotone generalized variational "
            "inequalities: GEM, the PGA contraction variants, and the "
            "ISTA/AD-LPMM baselines.";

  m.def("soft_threshold",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> v,
           double tau) { return fromVector(mgvi::softThreshold(toVector(v), tau)); },
        py::arg("v"), py::arg("tau"),
        "Componentwise sign(v)*max(|v|-tau, 0).");

  m.def("spectral_norm_estimate",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> M,
           double tol, int max_iter) {
          return mgvi::spectralNormEstimate(toMatrix(M), tol, max_iter).value;
        },
        py::arg("M"), py::arg("tol") = 1e-10, py::arg("max_iter") = 1000,
        "Power-iteration estimate of the largest singular value.");

  m.def("generate_lasso_instance",
        [](int m_rows, int n_cols, std::uint64_t seed, double lambda_reg) {
          mgvi::LassoInstance inst =
              mgvi::generateLassoInstance(m_rows, n_cols, seed, lambda_reg);
          py::dict out;
          out["A"] = fromMatrix(inst.A);
          out["b"] = fromVector(inst.b);
          out["x_true"] = fromVector(inst.x_true);
          out["lambda_reg"] = inst.lambda_reg;
          return out;
        },
        py::arg("m"), py::arg("n"), py::arg("seed") = 1,
        py::arg("lambda_reg") = 1.0,
        "Seeded Gaussian instance with the 20-spike sparse ground truth.");

  m.def("solve_lasso", &solveLasso, py::arg("A"), py::arg("b"),
        py::arg("lambda_reg") = 1.0, py::arg("solver") = "gem",
        py::arg("nu") = 0.9, py::arg("mu") = 0.4, py::arg("gamma") = 1.9,
        py::arg("beta0") = 1.0, py::arg("fixed_beta") = py::none(),
        py::arg("tol") = 1e-6, py::arg("max_iter") = 200000,
        "Solve 0.5*||Ax-b||^2 + lambda*||x||_1 with the named solver "
        "(ista, gem, pga-a1, pga-a2, pga-b1, pga-b2).");

  m.def("solve_basis_pursuit", &solveBasisPursuit, py::arg("A"), py::arg("b"),
        py::arg("solver") = "gem", py::arg("nu") = 0.9, py::arg("mu") = 0.4,
        py::arg("gamma") = 1.9, py::arg("beta0") = 1.0, py::arg("tol") = 1e-6,
        py::arg("max_iter") = 200000, py::arg("rho") = 1.0, py::arg("lanes") = 1,
        "Solve min ||x||_1 s.t. Ax = b through its saddle-point lift "
        "(gem, pga-a1, pga-b1, adlpmm).");

  m.def("support_recovered",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> x,
           py::array_t<double, py::array::c_style | py::array::forcecast> x_true,
           double threshold) {
          return mgvi::supportRecovered(toVector(x), toVector(x_true), threshold);
        },
        py::arg("x"), py::arg("x_true"), py::arg("threshold") = 1e-4);
}
