#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "infogeo/errors.hpp"

namespace infogeo {

struct QuadratureOptions {
  double rel_tolerance = 1e-10;
  double abs_tolerance = 1e-13;
  int initial_panels = 8;
  int max_doublings = 14;
  double tail_cutoff = 1e-16;  // truncate where p < cutoff * max p
};

/// Nodes and weights of n-point Gauss-Legendre on [-1,1], computed by Newton
/// iteration on the Legendre polynomial and cached per n.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n);

/// Integral of f over the finite interval [a,b]: composite 15-point
/// Gauss-Legendre on uniform panels, doubling the panel count until two
/// consecutive estimates agree within tolerance. Throws QuadratureNotConverged.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureOptions& opts = {});

struct Interval {
  double lower;
  double upper;
};

/// Finite truncation of a (possibly unbounded) support: expands geometrically
/// from the bulk of `weight` until the weight falls below
/// tail_cutoff * max(weight). Intended for smooth, rapidly decaying weights.
Interval truncate_support(const std::function<double(double)>& weight, const Interval& support,
                          double tail_cutoff);

}  // namespace infogeo
