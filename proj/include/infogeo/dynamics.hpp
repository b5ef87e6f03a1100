#pragma once

#include <iosfwd>
#include <vector>

#include "infogeo/manifold.hpp"

namespace infogeo {

/// Second-order dynamics on a chart, with optional Lagrangian structure.
/// `acceleration` is mandatory; `lagrangian`, `momentum` and `energy` are set
/// for genuinely Lagrangian flows and left empty for bare geodesic sprays.
/// `boundary_guess` seeds two-point shooting; when empty, q_fin - q_in is used.
struct LagrangianSystem {
  std::string name;
  Index dim = 0;
  Domain domain;
  std::function<double(const Vector&, const Vector&)> lagrangian;
  std::function<Vector(const Vector&, const Vector&)> momentum;
  std::function<Vector(const Vector&, const Vector&)> acceleration;
  std::function<double(const Vector&, const Vector&)> energy;
  std::function<Vector(const Vector&, const Vector&)> boundary_guess;
};

/// L_alpha(q,v) = (1/2) g_jk v^j v^k + (alpha/6) T_jkl v^j v^k v^l
double lagrangian(const ManifoldModel& model, double alpha, const TangentState& state);

/// p_j = g_jk v^k + (alpha/2) T_jkl v^k v^l
Vector momentum(const ManifoldModel& model, double alpha, const TangentState& state);

/// E = p_j v^j - L = (1/2) g_jk v^j v^k + (alpha/3) T_jkl v^j v^k v^l
double energy(const ManifoldModel& model, double alpha, const TangentState& state);

/// Acceleration solving
///   (g_jk + alpha T_jkl v^l) vdot^k =
///     - Gamma_jkl v^k v^l
///     - (alpha/6)(dT_jkl/dq^m + dT_jlm/dq^k + dT_jkm/dq^l - dT_klm/dq^j) v^k v^l v^m
/// with Gamma the first-kind Levi-Civita symbols. Throws SingularMassMatrix
/// when |det(g + alpha T.v)| < 1e-12 |det g|.
Vector el_acceleration(const ManifoldModel& model, double alpha, const TangentState& state);

/// The cubic Lagrangian dynamics of (model, alpha) as a LagrangianSystem.
LagrangianSystem cubic_lagrangian_system(const ManifoldModel& model, double alpha);

/// Bare geodesic flow of the alpha-connection: vdot^j = -Gamma^j_kl v^k v^l
/// (second-kind symbols of the alpha-connection). No Lagrangian structure.
LagrangianSystem connection_geodesic_system(const ManifoldModel& model, double alpha);

struct TrajectorySample {
  double t;
  TangentState state;
  double energy;
};

/// Time-sampled solution of a second-order flow over t in [0,1].
struct Trajectory {
  std::vector<TrajectorySample> samples;
  double alpha = 0.0;
  double energy_drift = 0.0;

  Index dimension() const { return samples.empty() ? 0 : samples.front().state.q.size(); }
  const TangentState& initial_state() const { return samples.front().state; }
  const TangentState& final_state() const { return samples.back().state; }
};

/// Classical fixed-step RK4 over t in [0,1] with step 1/steps. Samples are
/// recorded at every step; energy_drift is max_t |E(t) - E(0)| when the
/// system carries an energy functional, 0 otherwise. Throws DomainError if
/// the flow leaves the domain mid-integration.
Trajectory integrate(const LagrangianSystem& system, const TangentState& initial, int steps);

/// Convenience: integrate the cubic Lagrangian flow of (model, alpha).
Trajectory integrate(const ManifoldModel& model, double alpha, const TangentState& initial,
                     int steps);

/// CSV export with header t,q1..qn,v1..vn,E and 17-significant-digit fields.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);

}  // namespace infogeo
