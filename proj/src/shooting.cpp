#include "infogeo/shooting.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "infogeo/geometry.hpp"

namespace infogeo {

Vector initial_guess(const ManifoldModel& model, const Vector& q_in, const Vector& q_fin) {
  require_in_domain(model, q_in, "initial_guess");
  require_in_domain(model, q_fin, "initial_guess");
  const Vector dq = q_fin - q_in;
  const Tensor3 gamma2 = levi_civita_first(model, q_in).second_kind;
  return dq + 0.5 * gamma2.contractLastTwo(dq, dq);
}

namespace {

struct NewtonOutcome {
  Vector v;
  double residual = 0.0;
  int iterations = 0;
  Trajectory trajectory;
};

double max_norm(const Vector& x) { return x.size() ? x.cwiseAbs().maxCoeff() : 0.0; }

// Damped Newton on F(v) = q_v(1) - target. Throws NoConvergence,
// SingularShootingJacobian, or DomainError (seed integration left the domain).
NewtonOutcome newton_shoot(const LagrangianSystem& system, const Vector& q_in,
                           const Vector& target, const Vector& seed,
                           const ShootingOptions& opts) {
  const Index n = q_in.size();
  Vector v = seed;
  Trajectory traj = integrate(system, {q_in, v}, opts.steps);
  Vector f = traj.final_state().q - target;
  double fnorm = max_norm(f);

  int iter = 0;
  while (fnorm > opts.tolerance) {
    if (iter >= opts.max_iterations)
      throw NoConvergence("shoot: no convergence after " + std::to_string(iter) +
                          " iterations (residual " + std::to_string(fnorm) + ")");
    ++iter;

    // Forward-difference Jacobian dq(1)/dv.
    const double dv = 1e-6 * std::max(1.0, max_norm(v));
    Matrix jac(n, n);
    for (Index j = 0; j < n; ++j) {
      Vector vp = v;
      vp[j] += dv;
      const Trajectory tp = integrate(system, {q_in, vp}, opts.steps);
      jac.col(j) = (tp.final_state().q - traj.final_state().q) / dv;
    }
    Eigen::FullPivLU<Matrix> lu(jac);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible())
      throw SingularShootingJacobian("shoot: singular shooting jacobian (conjugate point?)");
    const Vector step = lu.solve(-f);

    // Armijo backtracking on |F|; domain exits damp the step as well.
    double lambda = 1.0;
    for (;;) {
      bool usable = false;
      Trajectory trial_traj;
      Vector trial_f;
      double trial_norm = 0.0;
      try {
        const Vector trial_v = v + lambda * step;
        trial_traj = integrate(system, {q_in, trial_v}, opts.steps);
        trial_f = trial_traj.final_state().q - target;
        trial_norm = max_norm(trial_f);
        usable = std::isfinite(trial_norm);
      } catch (const DomainError&) {
        usable = false;
      } catch (const SingularMassMatrix&) {
        usable = false;
      }
      if (usable && trial_norm <= (1.0 - 1e-4 * lambda) * fnorm) {
        v += lambda * step;
        traj = std::move(trial_traj);
        f = std::move(trial_f);
        fnorm = trial_norm;
        break;
      }
      lambda /= 2.0;
      if (lambda < opts.min_damping)
        throw NoConvergence("shoot: line search stalled (residual " + std::to_string(fnorm) +
                            ")");
    }
  }
  return {std::move(v), fnorm, iter, std::move(traj)};
}

bool near_domain_scale(const Domain& domain, const Vector& dq) {
  for (Index i = 0; i < dq.size(); ++i) {
    const double extent = domain.upper[i] - domain.lower[i];
    if (std::isfinite(extent) && std::abs(dq[i]) > 0.5 * extent) return true;
  }
  return false;
}

}  // namespace

ShootingResult shoot(const LagrangianSystem& system, const Vector& q_in, const Vector& q_fin,
                     const ShootingOptions& opts) {
  if (!system.domain.contains(q_in))
    throw DomainError("shoot: q_in outside domain of system '" + system.name + "'");
  if (!system.domain.contains(q_fin))
    throw DomainError("shoot: q_fin outside domain of system '" + system.name + "'");
  if (!(opts.tolerance > 0.0)) throw Error("shoot: tolerance must be positive");

  const Vector dq = q_fin - q_in;
  auto guess_for = [&](const Vector& target) {
    return system.boundary_guess ? system.boundary_guess(q_in, target)
                                 : Vector(target - q_in);
  };

  NewtonOutcome outcome;
  int extra_iterations = 0;
  try {
    outcome = newton_shoot(system, q_in, q_fin, guess_for(q_fin), opts);
  } catch (const Error&) {
    // Continuation toward q_fin, warm-starting each leg; selects the branch
    // connected to the trivial solution v = 0.
    Vector warm;
    bool have_warm = false;
    for (const double s : {0.25, 0.5, 0.75, 1.0}) {
      const Vector target = q_in + s * dq;
      const Vector seed = have_warm ? warm : guess_for(target);
      outcome = newton_shoot(system, q_in, target, seed, opts);
      warm = outcome.v;
      have_warm = true;
      if (s < 1.0) extra_iterations += outcome.iterations;
    }
  }

  ShootingResult result;
  result.v_in = std::move(outcome.v);
  result.residual = outcome.residual;
  result.iterations = outcome.iterations + extra_iterations;
  result.trajectory = std::move(outcome.trajectory);
  result.separation_warning = near_domain_scale(system.domain, dq);
  return result;
}

ShootingResult shoot(const ManifoldModel& model, double alpha, const Vector& q_in,
                     const Vector& q_fin, double tol) {
  ShootingOptions opts;
  opts.tolerance = tol;
  return shoot(cubic_lagrangian_system(model, alpha), q_in, q_fin, opts);
}

}  // namespace infogeo
