#pragma once

#include <utility>

#include "infogeo/manifold.hpp"

namespace infogeo {

/// Christoffel symbols at a point, stored in both kinds. The first kind
/// Gamma_jkl is symmetric in (k,l); the second kind is the first with the
/// leading index raised by the inverse metric. Recovery formulas consume the
/// first kind, trajectory equations the second.
struct ConnectionCoefficients {
  Vector point;
  Tensor3 first_kind;
  Tensor3 second_kind;
};

/// Central-difference step for tensor fields: h = max(1e-5, 1e-5*|coord|).
double fd_step(double coord);

/// Largest h' <= h such that q +- h' e_i stays inside the domain, shrinking
/// by halves at most six times. Throws DomainError when no such step exists.
double fit_step(const Domain& domain, const Vector& q, Index i, double h);

/// Levi-Civita symbols of g at q: analytic when the model supplies them,
/// otherwise by the central-difference step policy.
ConnectionCoefficients levi_civita_first(const ManifoldModel& model, const Vector& q);

/// First kind only, skipping the raise (hot path of the flow equations).
Tensor3 levi_civita_first_kind(const ManifoldModel& model, const Vector& q);

/// Same, but always by finite differences with an explicit step (diagnostics
/// and convergence studies).
ConnectionCoefficients levi_civita_first_fd(const ManifoldModel& model, const Vector& q,
                                            double step);

/// alpha-connection: Gamma_jkl - (alpha/2) T_jkl, both kinds.
ConnectionCoefficients alpha_connection(const ManifoldModel& model, const Vector& q,
                                        double alpha);

/// second_kind^j_kl = g^{jm} first_kind_mkl and its inverse operation.
Tensor3 raise_first_index(const Matrix& g, const Tensor3& first_kind);
Tensor3 lower_first_index(const Matrix& g, const Tensor3& second_kind);

/// Jacobian of an immersion at q (analytic or central differences).
Matrix immersion_jacobian(const Immersion& im, const Vector& q);

/// Pullback of ambient covariant tensors through an immersion:
///   (i*g)_jk = g_ab J^a_j J^b_k,  (i*T)_jkl = T_abc J^a_j J^b_k J^c_l.
/// Throws DegeneratePullback when the jacobian is rank-deficient at q.
std::pair<Matrix, Tensor3> pullback(const Immersion& im,
                                    const std::function<Matrix(const Vector&)>& ambient_metric,
                                    const std::function<Tensor3(const Vector&)>& ambient_skewness,
                                    const Vector& q);

/// Manifold model whose tensors are pulled back from `ambient` through `im`.
ManifoldModel pullback_model(std::string name, const Immersion& im,
                             const ManifoldModel& ambient, Domain source_domain);

}  // namespace infogeo
