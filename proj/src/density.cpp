#include "infogeo/density.hpp"

#include <cmath>

namespace infogeo {

namespace {

double log_density(const ParametricDensity& density, double x, const Vector& xi) {
  const double p = density.density(x, xi);
  if (!(p > 0.0))
    throw DensityError("score: density not positive where a score is required");
  return std::log(p);
}

Interval working_interval(const ParametricDensity& density, const Vector& xi,
                          const QuadratureOptions& opts) {
  auto weight = [&](double x) { return density.density(x, xi); };
  return truncate_support(weight, density.sample_domain, opts.tail_cutoff);
}

}  // namespace

Vector score(const ParametricDensity& density, double x, const Vector& xi) {
  if (density.log_density_gradient) return density.log_density_gradient(x, xi);
  const Index n = xi.size();
  Vector s(n);
  for (Index j = 0; j < n; ++j) {
    const double h = 1e-4 * std::max(1.0, std::abs(xi[j]));
    auto lp = [&](double offset) {
      Vector shifted = xi;
      shifted[j] += offset;
      return log_density(density, x, shifted);
    };
    s[j] = (-lp(2 * h) + 8.0 * lp(h) - 8.0 * lp(-h) + lp(-2 * h)) / (12.0 * h);
  }
  return s;
}

double normalization(const ParametricDensity& density, const Vector& xi,
                     const QuadratureOptions& opts) {
  const Interval range = working_interval(density, xi, opts);
  return integrate_adaptive([&](double x) { return density.density(x, xi); }, range.lower,
                            range.upper, opts);
}

namespace {

void require_normalized(const ParametricDensity& density, const Vector& xi,
                        const QuadratureOptions& opts) {
  const double z = normalization(density, xi, opts);
  if (std::abs(z - 1.0) > 1e-6)
    throw DensityError("density not normalized: integral = " + std::to_string(z));
}

}  // namespace

Matrix fisher_rao_metric(const ParametricDensity& density, const Vector& xi,
                         const QuadratureOptions& opts) {
  require_normalized(density, xi, opts);
  const Interval range = working_interval(density, xi, opts);
  const Index n = xi.size();
  Matrix g(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index k = j; k < n; ++k) {
      const double value = integrate_adaptive(
          [&](double x) {
            const Vector s = score(density, x, xi);
            return density.density(x, xi) * s[j] * s[k];
          },
          range.lower, range.upper, opts);
      g(j, k) = g(k, j) = value;
    }
  return g;
}

Tensor3 skewness_tensor(const ParametricDensity& density, const Vector& xi,
                        const QuadratureOptions& opts) {
  require_normalized(density, xi, opts);
  const Interval range = working_interval(density, xi, opts);
  const Index n = xi.size();
  Tensor3 t(n);
  for (Index j = 0; j < n; ++j)
    for (Index k = j; k < n; ++k)
      for (Index l = k; l < n; ++l) {
        const double value = integrate_adaptive(
            [&](double x) {
              const Vector s = score(density, x, xi);
              return density.density(x, xi) * s[j] * s[k] * s[l];
            },
            range.lower, range.upper, opts);
        t(j, k, l) = t(j, l, k) = t(k, j, l) = value;
        t(k, l, j) = t(l, j, k) = t(l, k, j) = value;
      }
  return t;
}

double kl_divergence(const ParametricDensity& density, const Vector& xi_in,
                     const Vector& xi_fin, const QuadratureOptions& opts) {
  const Interval range = working_interval(density, xi_in, opts);
  auto integrand = [&](double x) {
    const double p = density.density(x, xi_in);
    if (p <= 0.0) return 0.0;
    const double q = density.density(x, xi_fin);
    const double value = p * std::log(p / q);
    if (!std::isfinite(value))
      throw DensityError("kl_divergence: non-finite integrand (support mismatch)");
    return value;
  };
  return integrate_adaptive(integrand, range.lower, range.upper, opts);
}

}  // namespace infogeo
