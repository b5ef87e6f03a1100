#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "infogeo/density.hpp"
#include "infogeo/dynamics.hpp"

namespace infogeo {

/// Exponential family p = xi e^{-x xi} on xi > 0: g = 1/xi^2, T = -2/xi^3,
/// Gamma_111 = -1/xi^3.
ManifoldModel exponential_model();

/// The same family in the log chart y = ln xi: g = 1, T = -2.
ManifoldModel exponential_log_model();

/// R^3 with g = delta and the axis-aligned cubic skewness T_jjj = 1.
ManifoldModel euclidean_cubic_r3();

/// Standard embedding (theta, phi) -> (sin t cos p, sin t sin p, cos t) with
/// analytic jacobian; theta in (0, pi), phi in (0, 2 pi).
Immersion sphere_immersion();

/// S^2 with g and T pulled back from euclidean_cubic_r3 through the
/// immersion. Evaluations within 1e-3 of the chart boundary are rejected.
ManifoldModel sphere_pullback_model();

/// Round sphere: same metric, T = 0.
ManifoldModel sphere_round_model();

/// Free-particle Lagrangian L(y, u) = e^u - u - 1 on R, whose Hamilton
/// principal function is the Kullback-Leibler divergence of the exponential
/// family in the log chart.
LagrangianSystem kl_free_particle();

/// The exponential density as a ParametricDensity with analytic score.
ParametricDensity exponential_density();

/// Closed-form potential of the exponential model:
///   ln^2(xi_fin/xi_in)/2 - (alpha/3) ln^3(xi_fin/xi_in).
double closed_form_potential_exponential(double xi_in, double xi_fin, double alpha);

/// Geodesic distance between two chart points mapped through an immersion
/// into the unit sphere: arccos of the ambient dot product.
double great_circle_distance(const Immersion& im, const Vector& a, const Vector& b);

/// Registry entry: the chart model when one exists (kl-free is exposed as a
/// raw Lagrangian only, its `system` ignores alpha), a factory for the
/// dynamics, and a closed-form potential oracle when known.
struct BuiltinModel {
  std::string name;
  std::optional<ManifoldModel> manifold;
  std::function<LagrangianSystem(double alpha)> system;
  std::function<double(const Vector&, const Vector&, double alpha)> potential_oracle;
};

/// All builtins: "exponential1d", "exponential-log", "kl-free",
/// "euclidean-cubic-r3", "sphere-pullback", "sphere-round".
const std::vector<BuiltinModel>& builtin_models();

/// nullptr when the name is unknown.
const BuiltinModel* find_builtin(std::string_view name);

/// Load a model specification file: JSON {"dim": n, "domain": [[lo,hi],...],
/// "model": "<builtin-name>"}. Bounds may be null / "inf" / "-inf" for
/// unbounded ends. dim must match the builtin; a domain, when given, must be
/// contained in the builtin's and replaces it.
BuiltinModel load_model_spec(const std::string& path);

}  // namespace infogeo
