#pragma once

#include "mgvi/core.hpp"

namespace mgvi {

/// Componentwise sign(vᵢ)·max(|vᵢ| - tau, 0). Requires tau > 0. At the exact
/// boundary |vᵢ| = tau the result is 0.
Vector softThreshold(const Vector& v, double tau);

/// Componentwise clamp of v into [lo, hi]. Requires lo ≤ hi componentwise.
Vector clampToBox(const Vector& v, const Vector& lo, const Vector& hi);

/// θ(x) = weight·‖x‖₁; prox is the soft threshold at level β·weight.
ProxFunction l1Prox(double weight);

/// θ ≡ 0; prox is the identity. Carried by multiplier blocks of saddle
/// problems so that solvers see one uniform ProxFunction.
ProxFunction zeroProx();

/// θ = indicator of the box [lo, hi]; prox is the projection.
ProxFunction boxProx(Vector lo, Vector hi);

/// Blockwise prox for θ(x₁,…,x_B) = Σ θ_b(x_b). Blocks are independent, so
/// they may be evaluated concurrently; the output is bitwise identical to
/// sequential evaluation either way.
class SeparableBlockProx {
 public:
  SeparableBlockProx() = default;
  void addBlock(ProxFunction prox, int length);

  int totalLength() const { return total_; }
  int blockCount() const { return int(blocks_.size()); }

  /// Concatenation of per-block prox outputs, Prox_{τθ}(v).
  Vector apply(const Vector& v, double tau, int lanes = 1) const;

  /// Σ θ_b(slice); only valid when every block carries a value function.
  bool hasValue() const;
  double value(const Vector& v) const;

  /// View as a plain ProxFunction with the given evaluation lane count.
  ProxFunction asProxFunction(int lanes = 1) const;

 private:
  struct Block {
    ProxFunction fn;
    int offset = 0;
    int length = 0;
  };
  std::vector<Block> blocks_;
  int total_ = 0;
};

}  // namespace mgvi
