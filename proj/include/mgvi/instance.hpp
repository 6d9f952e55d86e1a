#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "mgvi/core.hpp"

namespace mgvi {

/// Counter-based PRNG: the SplitMix64 output function applied to a running
/// 64-bit counter, seeded by an offset. Standard normals come from the
/// Box-Muller transform on consecutive uniforms. Same seed, same stream,
/// independent of platform word order or thread schedule.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t nextU64();
  /// Uniform in (0, 1]; never returns 0 so log() below stays finite.
  double nextUniform01();
  double nextNormal();

 private:
  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct LassoInstance {
  DenseMatrix A;
  Vector b;        ///< b = A·x_true, exactly
  Vector x_true;
  double lambda_reg = 1.0;
};

/// The §6 recipe: A is m×n i.i.d. standard normal; x_true carries +1 at
/// 1-based indices 3, 11, 19, … and -1 at 7, 15, 23, …, up to min(n, 80)
/// (20 nonzeros at n ≥ 80); b = A·x_true. Requires n ≥ 3.
LassoInstance generateLassoInstance(int m, int n, uint64_t seed,
                                    double lambda_reg = 1.0);

/// Basis pursuit data min ‖x‖₁ s.t. Ax = b. x_true may be empty (unknown).
struct BpInstance {
  DenseMatrix A;
  Vector b;
  Vector x_true;
};

struct ThetaSpec {
  enum class Kind { l1, zero };
  Kind kind = Kind::zero;
  double weight = 1.0;  ///< l1 weight; ignored for zero
};

/// Two-block saddle data as stored on disk; θ blocks are restricted to the
/// closed-form functions the file format can name.
struct SaddleInstance {
  ThetaSpec theta1;
  ThetaSpec theta2;
  DenseMatrix A;
  DenseMatrix B;  ///< empty when q = 0
  Vector c;
};

using LoadedInstance = std::variant<LassoInstance, BpInstance, SaddleInstance>;

struct InstanceFileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reads the sectioned text format (header `MGVI-INSTANCE v1`, then `kind:`,
/// `dims:`, and `matrix`/`vector` blocks). Throws InstanceFileError with a
/// line number on parse errors and a section name when the file is
/// truncated.
LoadedInstance loadInstanceFile(const std::string& path);

/// Writes with 17 significant digits so a load-save-load cycle is bitwise
/// exact.
void writeInstanceFile(const std::string& path, const LoadedInstance& inst);

ProxFunction makeProx(const ThetaSpec& spec);

}  // namespace mgvi
