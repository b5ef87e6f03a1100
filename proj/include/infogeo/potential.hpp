#pragma once

#include <optional>
#include <string>

#include "infogeo/shooting.hpp"

namespace infogeo {

struct PotentialOptions {
  double tolerance = 1e-10;  // shooting tolerance; also scales the quadrature gate
  int steps = 200;
};

/// Value of the two-point potential S(q_in, q_fin) with solver metadata.
struct PotentialEvaluation {
  double value = 0.0;
  ShootingResult shooting;
  double quadrature_error = 0.0;  // |S at 2*steps - S at steps|
};

/// Hamilton principal function: S = integral_0^1 L(gamma_c, gammadot_c) dt by
/// composite Simpson over the RK4 samples of the shooting solution. The
/// returned value uses the doubled grid; quadrature_error compares the two.
/// Throws QuadratureNotConverged when halving changes the value by more than
/// 10 * tolerance.
PotentialEvaluation hamilton_principal(const LagrangianSystem& system, const Vector& q_in,
                                       const Vector& q_fin, const PotentialOptions& opts = {});

PotentialEvaluation hamilton_principal(const ManifoldModel& model, double alpha,
                                       const Vector& q_in, const Vector& q_fin,
                                       double tol, int steps = 200);

/// Canonical contrast function of the self-dual structure (T dropped):
/// equals half the squared Riemannian geodesic distance of g.
double self_dual_potential(const ManifoldModel& model, const Vector& q_in,
                           const Vector& q_fin, double tol, int steps = 200);

/// Exponential-map potential S = (1/2) g_jk(q_in) v^j v^k with v the inverse
/// exponential map of the alpha = 1 connection (shooting on its geodesics).
PotentialEvaluation expmap_potential(const ManifoldModel& model, const Vector& q_in,
                                     const Vector& q_fin, double tol, int steps = 200);

/// Central-difference derivatives of a two-point function on the diagonal:
///   mixed_second(j,k)      = d^2 S / d in_j d fin_k
///   third_fin_fin_in(j,k,l) = d^3 S / d in_j d fin_k d fin_l
///   third_in_in_fin(j,k,l)  = d^3 S / d fin_j d in_k d in_l
/// Tensor-product stencils; every stencil point is evaluated, the diagonal
/// zero of S is not assumed. Evaluations run concurrently.
struct DiagonalDerivatives {
  Matrix mixed_second;
  Tensor3 third_fin_fin_in;
  Tensor3 third_in_in_fin;
  double step_second = 0.0;
  double step_third = 0.0;
};

DiagonalDerivatives diagonal_derivatives(
    const std::function<double(const Vector&, const Vector&)>& potential, const Vector& q,
    double step_second, double step_third, const Domain* domain = nullptr);

struct RecoverOptions {
  double step_second = 0.0;     // 0 -> 1e-4 * max(1, |q|)
  double step_third = 0.0;      // 0 -> 1e-3 * max(1, |q|)
  double shoot_tolerance = 1e-11;
  int steps = 200;
};

/// Finite-difference estimates of (g, Gamma, T) at a diagonal point.
struct RecoveredGeometry {
  Matrix metric;                    // -d^2 S/d fin d in
  Tensor3 gamma_first;              // -(third_in_in_fin + third_fin_fin_in)/2
  std::optional<Tensor3> skewness;  // absent when the extraction is undefined
  Tensor3 third_fin_fin_in;
  Tensor3 third_in_in_fin;
  double step_second = 0.0;
  double step_third = 0.0;
};

/// Recovery from the Hamilton principal function of (model, alpha):
/// skewness = (third_in_in_fin - third_fin_fin_in) / (2 alpha), reported as
/// unavailable when alpha = 0. Requires q at least 2*step inside the domain.
RecoveredGeometry recover(const ManifoldModel& model, double alpha, const Vector& q,
                          const RecoverOptions& opts = {});

/// Recovery from the exponential-map potential. The construction yields
///   third_fin_fin_in = -Gamma_jkl + (3/2) T_jkl,
///   third_in_in_fin  = -Gamma_jkl - (3/2) T_jkl,
/// so here gamma_first = -(sum)/2 and skewness = (difference)/(-3).
RecoveredGeometry recover_expmap(const ManifoldModel& model, const Vector& q,
                                 const RecoverOptions& opts = {});

/// Velocity expansion of a Lagrangian at v = 0 by central differences:
/// gradient d L/d v, matrix d^2 L/d v^2 and tensor d^3 L/d v^3. For a
/// divergence Lagrangian these are 0, g_jk and -T_jkl/2.
struct VelocityExpansion {
  Vector gradient;
  Matrix metric;
  Tensor3 third;
};

VelocityExpansion expand_divergence_lagrangian(
    const std::function<double(const Vector&, const Vector&)>& lag, const Vector& q,
    double step = 5e-3);

/// JSON recovery report {point, alpha, step, metric, gamma_first, skewness,
/// errors_vs_model}; the error block is present when the model's analytic
/// tensors are available.
std::string recovery_report_json(const ManifoldModel& model, double alpha, const Vector& q,
                                 const RecoveredGeometry& rec);

}  // namespace infogeo
