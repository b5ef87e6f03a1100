#include "infogeo/dynamics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "infogeo/geometry.hpp"

namespace infogeo {

double lagrangian(const ManifoldModel& model, double alpha, const TangentState& state) {
  const Matrix g = metric_at(model, state.q);
  const Tensor3 t = model.skewness(state.q);
  const double quad = state.v.dot(g * state.v);
  const double cub = t.contract(state.v, state.v, state.v);
  return 0.5 * quad + (alpha / 6.0) * cub;
}

Vector momentum(const ManifoldModel& model, double alpha, const TangentState& state) {
  const Matrix g = metric_at(model, state.q);
  const Tensor3 t = model.skewness(state.q);
  return g * state.v + (alpha / 2.0) * t.contractLastTwo(state.v, state.v);
}

double energy(const ManifoldModel& model, double alpha, const TangentState& state) {
  const Matrix g = metric_at(model, state.q);
  const Tensor3 t = model.skewness(state.q);
  return 0.5 * state.v.dot(g * state.v) + (alpha / 3.0) * t.contract(state.v, state.v, state.v);
}

namespace {

// d T / d q^m for all m, central differences with the step policy.
std::vector<Tensor3> skewness_derivatives(const ManifoldModel& model, const Vector& q) {
  std::vector<Tensor3> dt(model.dim, Tensor3(model.dim));
  for (Index m = 0; m < model.dim; ++m) {
    const double h = fit_step(model.domain, q, m, fd_step(q[m]));
    Vector qp = q, qm = q;
    qp[m] += h;
    qm[m] -= h;
    const Tensor3 tp = model.skewness(qp);
    const Tensor3 tm = model.skewness(qm);
    dt[m] = (tp - tm) * (1.0 / (2.0 * h));
  }
  return dt;
}

}  // namespace

Vector el_acceleration(const ManifoldModel& model, double alpha, const TangentState& state) {
  const Index n = model.dim;
  const Vector& v = state.v;
  const Matrix g = metric_at(model, state.q);
  const Tensor3 t = model.skewness(state.q);

  const Matrix mass = g + alpha * t.contractLast(v);
  const double det_g = g.determinant();
  if (std::abs(mass.determinant()) < 1e-12 * std::abs(det_g))
    throw SingularMassMatrix("el_acceleration: effective mass matrix singular for model '" +
                             model.name + "'");

  const Tensor3 gamma = levi_civita_first_kind(model, state.q);
  Vector rhs = -gamma.contractLastTwo(v, v);

  if (alpha != 0.0) {
    const std::vector<Tensor3> dt = skewness_derivatives(model, state.q);
    // The bracket (dT_jkl/dq^m + dT_jlm/dq^k + dT_jkm/dq^l - dT_klm/dq^j),
    // contracted with v^k v^l v^m, kept term by term.
    for (Index j = 0; j < n; ++j) {
      double bracket = 0.0;
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l)
          for (Index m = 0; m < n; ++m) {
            const double vvv = v[k] * v[l] * v[m];
            bracket += dt[m](j, k, l) * vvv;
            bracket += dt[k](j, l, m) * vvv;
            bracket += dt[l](j, k, m) * vvv;
            bracket -= dt[j](k, l, m) * vvv;
          }
      rhs[j] -= (alpha / 6.0) * bracket;
    }
  }

  return mass.lu().solve(rhs);
}

LagrangianSystem cubic_lagrangian_system(const ManifoldModel& model, double alpha) {
  LagrangianSystem sys;
  sys.name = model.name;
  sys.dim = model.dim;
  sys.domain = model.domain;
  sys.lagrangian = [model, alpha](const Vector& q, const Vector& v) {
    return lagrangian(model, alpha, {q, v});
  };
  sys.momentum = [model, alpha](const Vector& q, const Vector& v) {
    return momentum(model, alpha, {q, v});
  };
  sys.acceleration = [model, alpha](const Vector& q, const Vector& v) {
    return el_acceleration(model, alpha, {q, v});
  };
  sys.energy = [model, alpha](const Vector& q, const Vector& v) {
    return energy(model, alpha, {q, v});
  };
  sys.boundary_guess = [model](const Vector& q_in, const Vector& q_fin) {
    const Vector dq = q_fin - q_in;
    const Tensor3 gamma2 = levi_civita_first(model, q_in).second_kind;
    return Vector(dq + 0.5 * gamma2.contractLastTwo(dq, dq));
  };
  return sys;
}

LagrangianSystem connection_geodesic_system(const ManifoldModel& model, double alpha) {
  LagrangianSystem sys;
  sys.name = model.name + ":geodesic";
  sys.dim = model.dim;
  sys.domain = model.domain;
  sys.acceleration = [model, alpha](const Vector& q, const Vector& v) {
    require_in_domain(model, q, "connection_geodesic_system");
    const Tensor3 gamma2 = alpha_connection(model, q, alpha).second_kind;
    return Vector(-gamma2.contractLastTwo(v, v));
  };
  sys.boundary_guess = [model, alpha](const Vector& q_in, const Vector& q_fin) {
    const Vector dq = q_fin - q_in;
    const Tensor3 gamma2 = alpha_connection(model, q_in, alpha).second_kind;
    return Vector(dq + 0.5 * gamma2.contractLastTwo(dq, dq));
  };
  return sys;
}

Trajectory integrate(const LagrangianSystem& system, const TangentState& initial, int steps) {
  if (steps < 1) throw Error("integrate: steps must be >= 1");
  if (!system.domain.contains(initial.q))
    throw DomainError("integrate: initial point outside domain of system '" + system.name +
                      "'");

  const double h = 1.0 / steps;
  Trajectory traj;
  traj.samples.reserve(steps + 1);

  auto sample_energy = [&](const Vector& q, const Vector& v) {
    return system.energy ? system.energy(q, v) : 0.0;
  };

  Vector q = initial.q;
  Vector v = initial.v;
  traj.samples.push_back({0.0, {q, v}, sample_energy(q, v)});

  for (int i = 0; i < steps; ++i) {
    const Vector k1q = v;
    const Vector k1v = system.acceleration(q, v);
    const Vector k2q = v + (h / 2.0) * k1v;
    const Vector k2v = system.acceleration(q + (h / 2.0) * k1q, k2q);
    const Vector k3q = v + (h / 2.0) * k2v;
    const Vector k3v = system.acceleration(q + (h / 2.0) * k2q, k3q);
    const Vector k4q = v + h * k3v;
    const Vector k4v = system.acceleration(q + h * k3q, k4q);

    q += (h / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (!system.domain.contains(q))
      throw DomainError("integrate: trajectory left the domain of system '" + system.name +
                        "' at t = " + std::to_string((i + 1) * h));
    traj.samples.push_back({(i + 1) * h, {q, v}, sample_energy(q, v)});
  }
  traj.samples.back().t = 1.0;

  if (system.energy) {
    const double e0 = traj.samples.front().energy;
    double drift = 0.0;
    for (const auto& s : traj.samples) drift = std::max(drift, std::abs(s.energy - e0));
    traj.energy_drift = drift;
  }
  return traj;
}

Trajectory integrate(const ManifoldModel& model, double alpha, const TangentState& initial,
                     int steps) {
  Trajectory traj = integrate(cubic_lagrangian_system(model, alpha), initial, steps);
  traj.alpha = alpha;
  return traj;
}

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
  const Index n = trajectory.dimension();
  out << "t";
  for (Index i = 1; i <= n; ++i) out << ",q" << i;
  for (Index i = 1; i <= n; ++i) out << ",v" << i;
  out << ",E\n";
  char buf[32];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out << buf;
  };
  for (const auto& s : trajectory.samples) {
    put(s.t);
    for (Index i = 0; i < n; ++i) {
      out << ',';
      put(s.state.q[i]);
    }
    for (Index i = 0; i < n; ++i) {
      out << ',';
      put(s.state.v[i]);
    }
    out << ',';
    put(s.energy);
    out << '\n';
  }
}

}  // namespace infogeo
