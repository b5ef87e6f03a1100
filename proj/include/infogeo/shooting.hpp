#pragma once

#include "infogeo/dynamics.hpp"

namespace infogeo {

struct ShootingOptions {
  double tolerance = 1e-10;      // max-norm on q(1) - q_fin
  int steps = 200;               // RK4 steps per trial integration
  int max_iterations = 50;
  double min_damping = 0.0009765625;  // 2^-10
};

struct ShootingResult {
  Vector v_in;
  double residual = 0.0;   // max-norm of q(1) - q_fin
  int iterations = 0;
  Trajectory trajectory;   // the converged trajectory
  // Set when |q_fin - q_in| is comparable to the domain extent; the returned
  // branch is the one continuously connected to v = 0, which then need not be
  // the minimizing one.
  bool separation_warning = false;
};

/// Series seed for the boundary problem:
///   v^j = dq^j + (1/2) Gamma^j_kl(q_in) dq^k dq^l,  dq = q_fin - q_in,
/// with second-kind Levi-Civita symbols (one fixed-point refinement of the
/// implicit near-diagonal relation).
Vector initial_guess(const ManifoldModel& model, const Vector& q_in, const Vector& q_fin);

/// Damped Newton on F(v) = q_v(1) - q_fin with forward-difference Jacobian
/// and Armijo backtracking on |F|. If Newton fails from the seed, a
/// continuation sequence q_fin(s) = q_in + s dq, s = 1/4, 1/2, 3/4, 1 is
/// solved with warm starts, selecting the branch connected to v = 0.
ShootingResult shoot(const LagrangianSystem& system, const Vector& q_in, const Vector& q_fin,
                     const ShootingOptions& opts = {});

/// Shooting on the cubic Lagrangian flow of (model, alpha).
ShootingResult shoot(const ManifoldModel& model, double alpha, const Vector& q_in,
                     const Vector& q_fin, double tol);

}  // namespace infogeo
