#include "infogeo/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace infogeo {

namespace {

std::pair<std::vector<double>, std::vector<double>> compute_gauss_legendre(int n) {
  // Nodes by Newton iteration on P_n with the usual cosine initial guesses.
  std::vector<double> x(n), w(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
  return {std::move(x), std::move(w)};
}

}  // namespace

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

namespace {

double composite_gl15(const std::function<double(double)>& f, double a, double b, int panels) {
  const auto& [nodes, weights] = gauss_legendre(15);
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    const double half = 0.5 * width;
    double panel = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) panel += weights[i] * f(mid + half * nodes[i]);
    total += panel * half;
  }
  return total;
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureOptions& opts) {
  if (!(std::isfinite(a) && std::isfinite(b)))
    throw QuadratureNotConverged("integrate_adaptive: non-finite interval");
  if (a == b) return 0.0;
  int panels = std::max(1, opts.initial_panels);
  double previous = composite_gl15(f, a, b, panels);
  for (int d = 0; d < opts.max_doublings; ++d) {
    panels *= 2;
    const double current = composite_gl15(f, a, b, panels);
    const double change = std::abs(current - previous);
    if (change <= std::max(opts.abs_tolerance, opts.rel_tolerance * std::abs(current)))
      return current;
    previous = current;
  }
  throw QuadratureNotConverged("integrate_adaptive: no convergence after " +
                               std::to_string(opts.max_doublings) + " panel doublings");
}

Interval truncate_support(const std::function<double(double)>& weight, const Interval& support,
                          double tail_cutoff) {
  double lo = support.lower;
  double hi = support.upper;
  const bool lo_inf = !std::isfinite(lo);
  const bool hi_inf = !std::isfinite(hi);
  if (!lo_inf && !hi_inf) return {lo, hi};

  const double anchor = !lo_inf ? lo : (!hi_inf ? hi : 0.0);

  // Probe a geometric ladder for the weight's bulk along each unbounded end.
  std::vector<double> probes;
  for (int k = -30; k <= 60; ++k) {
    const double step = std::ldexp(1.0, k);
    if (hi_inf) probes.push_back(anchor + step);
    if (lo_inf) probes.push_back(anchor - step);
  }
  double wmax = 0.0;
  double x_at_max = anchor;
  for (double x : probes) {
    const double wx = weight(x);
    if (std::isfinite(wx) && wx > wmax) {
      wmax = wx;
      x_at_max = x;
    }
  }
  if (!(wmax > 0.0))
    throw QuadratureNotConverged("truncate_support: weight vanished on all probes");
  const double threshold = tail_cutoff * wmax;

  auto expand = [&](double from, double direction) {
    double t = std::max(1.0, std::abs(from));
    double x = from + direction * t;
    int guard = 0;
    while (weight(x) > threshold) {
      t *= 2.0;
      x = from + direction * t;
      if (++guard > 200)
        throw QuadratureNotConverged("truncate_support: tail does not decay");
    }
    return x;
  };

  if (hi_inf) hi = expand(std::max(anchor, x_at_max), +1.0);
  if (lo_inf) lo = expand(std::min(anchor, x_at_max), -1.0);
  return {lo, hi};
}

}  // namespace infogeo
