#pragma once

#include <limits>

#include "infogeo/types.hpp"

namespace infogeo {

/// Per-coordinate open interval bounds; entries may be +-infinity.
/// `margin` shrinks the usable region: a point is accepted only if it keeps
/// that distance from every finite bound.
struct Domain {
  Vector lower;
  Vector upper;
  double margin = 0.0;

  static Domain unbounded(Index n) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    Domain d;
    d.lower = Vector::Constant(n, -inf);
    d.upper = Vector::Constant(n, inf);
    return d;
  }

  static Domain positive(Index n) {
    Domain d = unbounded(n);
    d.lower.setZero();
    return d;
  }

  static Domain box(const Vector& lo, const Vector& hi, double margin = 0.0) {
    Domain d;
    d.lower = lo;
    d.upper = hi;
    d.margin = margin;
    return d;
  }

  Index dimension() const { return lower.size(); }

  bool contains(const Vector& q) const {
    if (q.size() != lower.size()) return false;
    for (Index i = 0; i < q.size(); ++i) {
      if (!(q[i] > lower[i] + margin)) return false;
      if (!(q[i] < upper[i] - margin)) return false;
    }
    return true;
  }

  /// Distance from q to the closest (margin-adjusted) boundary along
  /// coordinate i; +infinity when both bounds are infinite.
  double gap(const Vector& q, Index i) const {
    const double lo = q[i] - (lower[i] + margin);
    const double hi = (upper[i] - margin) - q[i];
    return std::min(lo, hi);
  }
};

}  // namespace infogeo
