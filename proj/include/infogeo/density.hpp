#pragma once

#include "infogeo/quadrature.hpp"
#include "infogeo/types.hpp"

namespace infogeo {

/// Parametric family p(x, xi) >= 0 of densities over a scalar outcome x.
/// The score d log p / d xi^j may be analytic; otherwise it is formed by
/// 5-point central differences in xi with step 1e-4 * max(1, |xi_j|).
struct ParametricDensity {
  Interval sample_domain{0.0, 0.0};
  Index parameter_dim = 1;
  std::function<double(double, const Vector&)> density;
  std::function<Vector(double, const Vector&)> log_density_gradient;  // optional
};

/// Score function d log p / d xi at (x, xi).
Vector score(const ParametricDensity& density, double x, const Vector& xi);

/// integral p dx over the (truncated) support.
double normalization(const ParametricDensity& density, const Vector& xi,
                     const QuadratureOptions& opts = {});

/// g_jk = integral p (d_j log p)(d_k log p) dx. Throws DensityError when the
/// family is not normalized at xi within 1e-6.
Matrix fisher_rao_metric(const ParametricDensity& density, const Vector& xi,
                         const QuadratureOptions& opts = {});

/// T_jkl = integral p (d_j log p)(d_k log p)(d_l log p) dx.
Tensor3 skewness_tensor(const ParametricDensity& density, const Vector& xi,
                        const QuadratureOptions& opts = {});

/// integral p(x, xi_in) ln(p(x, xi_in)/p(x, xi_fin)) dx. Throws DensityError
/// when the integrand is non-finite on the support (absolute-continuity
/// violation).
double kl_divergence(const ParametricDensity& density, const Vector& xi_in,
                     const Vector& xi_fin, const QuadratureOptions& opts = {});

}  // namespace infogeo
