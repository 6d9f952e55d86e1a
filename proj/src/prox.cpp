#include "mgvi/prox.hpp"

#include <cmath>
#include <limits>

#include "lanes.hpp"

namespace mgvi {

Vector softThreshold(const Vector& v, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("softThreshold: tau must be > 0");
  Vector r(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]) - tau;
    r[i] = a > 0.0 ? (v[i] > 0.0 ? a : -a) : 0.0;
  }
  return r;
}

Vector clampToBox(const Vector& v, const Vector& lo, const Vector& hi) {
  if (v.size() != lo.size() || v.size() != hi.size()) {
    throw std::invalid_argument("clampToBox: length mismatch");
  }
  Vector r(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (lo[i] > hi[i]) throw std::invalid_argument("clampToBox: lo > hi in a component");
    r[i] = std::min(std::max(v[i], lo[i]), hi[i]);
  }
  return r;
}

ProxFunction l1Prox(double weight) {
  if (!(weight > 0.0)) throw std::invalid_argument("l1Prox: weight must be > 0");
  ProxFunction p;
  p.prox = [weight](const Vector& v, double beta) {
    return softThreshold(v, beta * weight);
  };
  p.value = [weight](const Vector& x) {
    double s = 0.0;
    for (double xi : x) s += std::abs(xi);
    return weight * s;
  };
  return p;
}

ProxFunction zeroProx() {
  ProxFunction p;
  p.prox = [](const Vector& v, double) { return v; };
  p.value = [](const Vector&) { return 0.0; };
  return p;
}

ProxFunction boxProx(Vector lo, Vector hi) {
  if (lo.size() != hi.size()) throw std::invalid_argument("boxProx: lo/hi length mismatch");
  for (size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw std::invalid_argument("boxProx: lo > hi in a component");
  }
  auto lo_p = std::make_shared<const Vector>(std::move(lo));
  auto hi_p = std::make_shared<const Vector>(std::move(hi));
  ProxFunction p;
  p.prox = [lo_p, hi_p](const Vector& v, double) {
    return clampToBox(v, *lo_p, *hi_p);
  };
  p.value = [lo_p, hi_p](const Vector& x) {
    for (size_t i = 0; i < x.size(); ++i) {
      if (x[i] < (*lo_p)[i] || x[i] > (*hi_p)[i]) {
        return std::numeric_limits<double>::infinity();
      }
    }
    return 0.0;
  };
  return p;
}

void SeparableBlockProx::addBlock(ProxFunction prox, int length) {
  if (length < 0) throw std::invalid_argument("SeparableBlockProx: negative block length");
  blocks_.push_back(Block{std::move(prox), total_, length});
  total_ += length;
}

Vector SeparableBlockProx::apply(const Vector& v, double tau, int lanes) const {
  if (v.size() != size_t(total_)) {
    throw std::invalid_argument("SeparableBlockProx: input length " +
                                std::to_string(v.size()) + " != total " +
                                std::to_string(total_));
  }
  Vector out(v.size());
  std::vector<std::function<void()>> tasks;
  tasks.reserve(blocks_.size());
  for (const Block& b : blocks_) {
    if (b.length == 0) continue;
    tasks.push_back([&, &b = b] {
      Vector slice(v.begin() + b.offset, v.begin() + b.offset + b.length);
      Vector r = b.fn.prox(slice, tau);
      if (r.size() != size_t(b.length)) {
        throw std::runtime_error("SeparableBlockProx: block prox changed length");
      }
      std::copy(r.begin(), r.end(), out.begin() + b.offset);
    });
  }
  detail::runOnLanes(std::move(tasks), lanes);
  return out;
}

bool SeparableBlockProx::hasValue() const {
  for (const Block& b : blocks_) {
    if (b.length > 0 && !b.fn.value) return false;
  }
  return true;
}

double SeparableBlockProx::value(const Vector& v) const {
  if (v.size() != size_t(total_)) {
    throw std::invalid_argument("SeparableBlockProx::value: length mismatch");
  }
  double s = 0.0;
  for (const Block& b : blocks_) {
    if (b.length == 0) continue;
    Vector slice(v.begin() + b.offset, v.begin() + b.offset + b.length);
    s += b.fn.value(slice);
  }
  return s;
}

ProxFunction SeparableBlockProx::asProxFunction(int lanes) const {
  ProxFunction p;
  SeparableBlockProx self = *this;
  p.prox = [self, lanes](const Vector& v, double tau) {
    return self.apply(v, tau, lanes);
  };
  if (hasValue()) {
    p.value = [self](const Vector& v) { return self.value(v); };
  }
  return p;
}

}  // namespace mgvi
