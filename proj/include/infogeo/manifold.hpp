#pragma once

#include <functional>
#include <string>

#include "infogeo/domain.hpp"
#include "infogeo/errors.hpp"
#include "infogeo/types.hpp"

namespace infogeo {

/// Chart-level description of a statistical manifold: dimension, open domain,
/// and evaluators for the metric g_jk and the totally symmetric skewness
/// tensor T_jkl. An analytic map for the first-kind Christoffel symbols of g
/// may be supplied; otherwise they are produced by central differences of g.
struct ManifoldModel {
  std::string name;
  Index dim = 0;
  Domain domain;
  std::function<Matrix(const Vector&)> metric;
  std::function<Tensor3(const Vector&)> skewness;
  std::function<Tensor3(const Vector&)> christoffel_first;  // optional
};

/// Point-velocity pair (q, v) on the tangent bundle.
struct TangentState {
  Vector q;
  Vector v;
};

/// Smooth map q -> x(q) into a higher-dimensional chart, used to pull
/// covariant tensors back. The jacobian dx^a/dq^j may be analytic; otherwise
/// it is formed by central differences of `map`.
struct Immersion {
  Index source_dim = 0;
  Index target_dim = 0;
  std::function<Vector(const Vector&)> map;
  std::function<Matrix(const Vector&)> jacobian;  // optional
};

inline void require_in_domain(const ManifoldModel& model, const Vector& q,
                              const char* where) {
  if (!model.domain.contains(q))
    throw DomainError(std::string(where) + ": point outside domain of model '" +
                      model.name + "'");
}

inline Matrix metric_at(const ManifoldModel& model, const Vector& q) {
  require_in_domain(model, q, "metric_at");
  return model.metric(q);
}

inline Tensor3 skewness_at(const ManifoldModel& model, const Vector& q) {
  require_in_domain(model, q, "skewness_at");
  return model.skewness(q);
}

/// Checks g(q) symmetric positive-definite and T(q) totally symmetric.
/// Throws Error with a description of the first violated invariant.
void validate_model_at(const ManifoldModel& model, const Vector& q,
                       double tol = 1e-10);

}  // namespace infogeo
