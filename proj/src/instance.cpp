#include "mgvi/instance.hpp"

#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mgvi/prox.hpp"

namespace mgvi {

uint64_t Rng::nextU64() {
  // SplitMix64 (Steele, Lea, Flood 2014): golden-ratio counter + finalizer.
  uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::nextUniform01() {
  // 53 random bits into (0, 1]: (k + 1) / 2^53 with k in [0, 2^53).
  const uint64_t k = nextU64() >> 11;
  return double(k + 1) * 0x1.0p-53;
}

double Rng::nextNormal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = nextUniform01();
  const double u2 = nextUniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * 3.14159265358979323846 * u2;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

LassoInstance generateLassoInstance(int m, int n, uint64_t seed,
                                    double lambda_reg) {
  if (m < 1) throw std::invalid_argument("generateLassoInstance: m must be >= 1");
  if (n < 3) throw std::invalid_argument("generateLassoInstance: n must be >= 3");
  if (!(lambda_reg > 0.0)) {
    throw std::invalid_argument("generateLassoInstance: lambda_reg must be > 0");
  }

  LassoInstance inst;
  inst.lambda_reg = lambda_reg;

  Rng rng(seed);
  DenseMatrix A(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) A(i, j) = rng.nextNormal();
  }

  Vector x_true(n, 0.0);
  const int last = std::min(n, 80);
  for (int i = 3; i <= last; i += 8) x_true[i - 1] = 1.0;   // 1-based 3:8:80
  for (int i = 7; i <= last; i += 8) x_true[i - 1] = -1.0;  // 1-based 7:8:80

  inst.b = matVec(A, x_true);
  inst.A = std::move(A);
  inst.x_true = std::move(x_true);
  return inst;
}

ProxFunction makeProx(const ThetaSpec& spec) {
  switch (spec.kind) {
    case ThetaSpec::Kind::l1: return l1Prox(spec.weight);
    case ThetaSpec::Kind::zero: return zeroProx();
  }
  throw std::invalid_argument("makeProx: unknown theta kind");
}

// ---------------------------------------------------------------------------
// Instance file format
//
//   MGVI-INSTANCE v1
//   kind: lasso|bp|saddle
//   dims: m n [q]
//   lambda: <v>            (lasso only)
//   theta1: l1 <w>|zero    (saddle only)
//   theta2: l1 <w>|zero    (saddle only)
//   matrix A               (m rows, one row per line)
//   vector b               (one entry per line; saddle uses `vector c`)
//   vector x_true          (optional, lasso/bp)
//   matrix B               (saddle, omitted when q = 0)
//
// Values are written with 17 significant digits so round-trips are exact.
// ---------------------------------------------------------------------------

namespace {

class LineReader {
 public:
  explicit LineReader(const std::string& path) : path_(path), in_(path) {
    if (!in_) throw InstanceFileError(path + ": cannot open file");
  }

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InstanceFileError(path_ + ":" + std::to_string(line_no_) + ": " + msg);
  }
  [[noreturn]] void failTruncated(const std::string& section) const {
    throw InstanceFileError(path_ + ": truncated file, missing section '" +
                            section + "'");
  }
  int lineNo() const { return line_no_; }

 private:
  std::string path_;
  std::ifstream in_;
  int line_no_ = 0;
};

std::vector<double> parseRow(LineReader& r, const std::string& line, int expect) {
  std::vector<double> out;
  out.reserve(size_t(expect));
  const char* p = line.data();
  const char* end = line.data() + line.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
    if (p == end) break;
    double v = 0.0;
    auto res = std::from_chars(p, end, v);
    if (res.ec != std::errc{}) r.fail("cannot parse number near '" + std::string(p, std::min<size_t>(8, size_t(end - p))) + "'");
    out.push_back(v);
    p = res.ptr;
  }
  if (int(out.size()) != expect) {
    r.fail("expected " + std::to_string(expect) + " values on this row, got " +
           std::to_string(out.size()));
  }
  return out;
}

DenseMatrix readMatrix(LineReader& r, const std::string& name, int rows, int cols) {
  DenseMatrix M(rows, cols);
  std::string line;
  for (int i = 0; i < rows; ++i) {
    if (!r.next(line)) r.failTruncated("matrix " + name + " row " + std::to_string(i + 1));
    std::vector<double> row = parseRow(r, line, cols);
    for (int j = 0; j < cols; ++j) M(i, j) = row[j];
  }
  return M;
}

Vector readVector(LineReader& r, const std::string& name, int len) {
  Vector v(static_cast<size_t>(len));
  std::string line;
  for (int i = 0; i < len; ++i) {
    if (!r.next(line)) r.failTruncated("vector " + name + " entry " + std::to_string(i + 1));
    v[size_t(i)] = parseRow(r, line, 1)[0];
  }
  return v;
}

ThetaSpec parseThetaSpec(LineReader& r, const std::string& text) {
  std::istringstream ss(text);
  std::string kind;
  ss >> kind;
  ThetaSpec spec;
  if (kind == "zero") {
    spec.kind = ThetaSpec::Kind::zero;
  } else if (kind == "l1") {
    spec.kind = ThetaSpec::Kind::l1;
    if (!(ss >> spec.weight) || !(spec.weight > 0.0)) {
      r.fail("theta 'l1' needs a positive weight");
    }
  } else {
    r.fail("unknown theta kind '" + kind + "' (expected 'l1 <w>' or 'zero')");
  }
  return spec;
}

std::string formatValue(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void writeMatrix(std::ofstream& out, const std::string& name, const DenseMatrix& M) {
  out << "matrix " << name << "\n";
  for (int i = 0; i < M.rows(); ++i) {
    for (int j = 0; j < M.cols(); ++j) {
      if (j) out << ' ';
      out << formatValue(M(i, j));
    }
    out << "\n";
  }
}

void writeVector(std::ofstream& out, const std::string& name, const Vector& v) {
  out << "vector " << name << "\n";
  for (double x : v) out << formatValue(x) << "\n";
}

}  // namespace

LoadedInstance loadInstanceFile(const std::string& path) {
  LineReader r(path);
  std::string line;

  if (!r.next(line)) r.failTruncated("header");
  if (line != "MGVI-INSTANCE v1") r.fail("expected header 'MGVI-INSTANCE v1'");

  if (!r.next(line)) r.failTruncated("kind");
  if (line.rfind("kind: ", 0) != 0) r.fail("expected 'kind: lasso|bp|saddle'");
  const std::string kind = line.substr(6);
  if (kind != "lasso" && kind != "bp" && kind != "saddle") {
    r.fail("unknown kind '" + kind + "'");
  }

  if (!r.next(line)) r.failTruncated("dims");
  if (line.rfind("dims: ", 0) != 0) r.fail("expected 'dims: m n [q]'");
  int m = 0, n = 0, q = 0;
  {
    std::istringstream ss(line.substr(6));
    if (!(ss >> m >> n)) r.fail("dims needs at least m and n");
    ss >> q;
    if (m < 1 || n < 0 || q < 0) r.fail("dims out of range");
  }

  double lambda_reg = 1.0;
  ThetaSpec theta1, theta2;

  // Optional keyword lines before the data blocks.
  bool have_line = r.next(line);
  while (have_line && line.find(':') != std::string::npos &&
         line.rfind("matrix", 0) != 0 && line.rfind("vector", 0) != 0) {
    if (line.rfind("lambda: ", 0) == 0) {
      lambda_reg = std::stod(line.substr(8));
      if (!(lambda_reg > 0.0)) r.fail("lambda must be > 0");
    } else if (line.rfind("theta1: ", 0) == 0) {
      theta1 = parseThetaSpec(r, line.substr(8));
    } else if (line.rfind("theta2: ", 0) == 0) {
      theta2 = parseThetaSpec(r, line.substr(8));
    } else {
      r.fail("unknown keyword line '" + line + "'");
    }
    have_line = r.next(line);
  }

  auto expectBlock = [&](const std::string& want) {
    if (!have_line) r.failTruncated(want);
    if (line != want) r.fail("expected '" + want + "', got '" + line + "'");
  };

  if (kind == "saddle") {
    expectBlock("matrix A");
    DenseMatrix A = readMatrix(r, "A", m, n);
    DenseMatrix B;
    have_line = r.next(line);
    if (q > 0) {
      expectBlock("matrix B");
      B = readMatrix(r, "B", m, q);
      have_line = r.next(line);
    }
    expectBlock("vector c");
    Vector c = readVector(r, "c", m);
    SaddleInstance inst;
    inst.theta1 = theta1;
    inst.theta2 = theta2;
    inst.A = std::move(A);
    inst.B = std::move(B);
    inst.c = std::move(c);
    return inst;
  }

  expectBlock("matrix A");
  DenseMatrix A = readMatrix(r, "A", m, n);
  have_line = r.next(line);
  expectBlock("vector b");
  Vector b = readVector(r, "b", m);

  Vector x_true;
  if (r.next(line)) {
    if (line != "vector x_true") r.fail("expected 'vector x_true' or end of file");
    x_true = readVector(r, "x_true", n);
  }

  if (kind == "lasso") {
    LassoInstance inst;
    inst.A = std::move(A);
    inst.b = std::move(b);
    inst.x_true = std::move(x_true);
    inst.lambda_reg = lambda_reg;
    return inst;
  }
  BpInstance inst;
  inst.A = std::move(A);
  inst.b = std::move(b);
  inst.x_true = std::move(x_true);
  return inst;
}

void writeInstanceFile(const std::string& path, const LoadedInstance& inst) {
  std::ofstream out(path);
  if (!out) throw InstanceFileError(path + ": cannot open for writing");
  out << "MGVI-INSTANCE v1\n";

  if (const auto* lasso = std::get_if<LassoInstance>(&inst)) {
    out << "kind: lasso\n";
    out << "dims: " << lasso->A.rows() << " " << lasso->A.cols() << "\n";
    out << "lambda: " << formatValue(lasso->lambda_reg) << "\n";
    writeMatrix(out, "A", lasso->A);
    writeVector(out, "b", lasso->b);
    if (!lasso->x_true.empty()) writeVector(out, "x_true", lasso->x_true);
  } else if (const auto* bp = std::get_if<BpInstance>(&inst)) {
    out << "kind: bp\n";
    out << "dims: " << bp->A.rows() << " " << bp->A.cols() << "\n";
    writeMatrix(out, "A", bp->A);
    writeVector(out, "b", bp->b);
    if (!bp->x_true.empty()) writeVector(out, "x_true", bp->x_true);
  } else {
    const auto& sd = std::get<SaddleInstance>(inst);
    out << "kind: saddle\n";
    const int q = sd.B.empty() ? 0 : sd.B.cols();
    out << "dims: " << sd.A.rows() << " " << sd.A.cols() << " " << q << "\n";
    auto thetaLine = [&](const char* name, const ThetaSpec& t) {
      out << name << ": ";
      if (t.kind == ThetaSpec::Kind::zero) {
        out << "zero\n";
      } else {
        out << "l1 " << formatValue(t.weight) << "\n";
      }
    };
    thetaLine("theta1", sd.theta1);
    thetaLine("theta2", sd.theta2);
    writeMatrix(out, "A", sd.A);
    if (q > 0) writeMatrix(out, "B", sd.B);
    writeVector(out, "c", sd.c);
  }
  if (!out) throw InstanceFileError(path + ": write failed");
}

}  // namespace mgvi
