#include "infogeo/potential.hpp"

#include <cmath>
#include <map>
#include <json.hpp>

#include "infogeo/geometry.hpp"
#include "infogeo/parallel.hpp"

namespace infogeo {

namespace {

// Composite Simpson over uniformly sampled values; the sample count must be
// odd (even number of intervals).
double simpson(const std::vector<double>& values, double h) {
  const std::size_t n = values.size() - 1;
  double sum = values.front() + values.back();
  for (std::size_t i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * values[i];
  return sum * h / 3.0;
}

double action_quadrature(const LagrangianSystem& system, const Trajectory& traj) {
  std::vector<double> values;
  values.reserve(traj.samples.size());
  for (const auto& s : traj.samples)
    values.push_back(system.lagrangian(s.state.q, s.state.v));
  return simpson(values, 1.0 / double(traj.samples.size() - 1));
}

int even_steps(int steps) { return steps % 2 ? steps + 1 : steps; }

}  // namespace

PotentialEvaluation hamilton_principal(const LagrangianSystem& system, const Vector& q_in,
                                       const Vector& q_fin, const PotentialOptions& opts) {
  if (!system.lagrangian)
    throw Error("hamilton_principal: system '" + system.name + "' has no Lagrangian");

  ShootingOptions sopts;
  sopts.tolerance = opts.tolerance;
  sopts.steps = even_steps(opts.steps);

  PotentialEvaluation eval;
  eval.shooting = shoot(system, q_in, q_fin, sopts);

  const double coarse = action_quadrature(system, eval.shooting.trajectory);
  const Trajectory fine =
      integrate(system, {q_in, eval.shooting.v_in}, 2 * sopts.steps);
  const double refined = action_quadrature(system, fine);

  eval.value = refined;
  eval.quadrature_error = std::abs(refined - coarse);
  if (eval.quadrature_error > 10.0 * opts.tolerance)
    throw QuadratureNotConverged("hamilton_principal: step halving changed the action by " +
                                 std::to_string(eval.quadrature_error));
  return eval;
}

PotentialEvaluation hamilton_principal(const ManifoldModel& model, double alpha,
                                       const Vector& q_in, const Vector& q_fin, double tol,
                                       int steps) {
  PotentialOptions opts;
  opts.tolerance = tol;
  opts.steps = steps;
  return hamilton_principal(cubic_lagrangian_system(model, alpha), q_in, q_fin, opts);
}

double self_dual_potential(const ManifoldModel& model, const Vector& q_in, const Vector& q_fin,
                           double tol, int steps) {
  ManifoldModel self_dual = model;
  const Index n = model.dim;
  self_dual.skewness = [n](const Vector&) { return Tensor3::Zero(n); };
  return hamilton_principal(self_dual, 0.0, q_in, q_fin, tol, steps).value;
}

PotentialEvaluation expmap_potential(const ManifoldModel& model, const Vector& q_in,
                                     const Vector& q_fin, double tol, int steps) {
  ShootingOptions sopts;
  sopts.tolerance = tol;
  sopts.steps = steps;
  PotentialEvaluation eval;
  eval.shooting = shoot(connection_geodesic_system(model, 1.0), q_in, q_fin, sopts);
  const Matrix g = metric_at(model, q_in);
  eval.value = 0.5 * eval.shooting.v_in.dot(g * eval.shooting.v_in);
  eval.quadrature_error = 0.0;  // no action quadrature in this construction
  return eval;
}

namespace {

// A stencil point is identified by integer offsets (units of the step) on the
// in- and fin-copies of the base point. Identical points are evaluated once,
// concurrently.
class StencilEvaluator {
 public:
  StencilEvaluator(const std::function<double(const Vector&, const Vector&)>& potential,
                   const Vector& q, double step)
      : potential_(potential), q_(q), step_(step), n_(q.size()) {}

  // Offsets: first n entries displace q_in, last n displace q_fin.
  std::size_t intern(const std::vector<int>& key) {
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    const std::size_t id = keys_.size();
    index_.emplace(key, id);
    keys_.push_back(key);
    return id;
  }

  void evaluate() {
    values_ = parallel_map(keys_.size(), [this](std::size_t i) {
      Vector a = q_, b = q_;
      const auto& key = keys_[i];
      for (Index c = 0; c < n_; ++c) {
        a[c] += key[c] * step_;
        b[c] += key[n_ + c] * step_;
      }
      return potential_(a, b);
    });
  }

  double value(std::size_t id) const { return values_[id]; }

  std::vector<int> zero_key() const { return std::vector<int>(2 * n_, 0); }

 private:
  const std::function<double(const Vector&, const Vector&)>& potential_;
  Vector q_;
  double step_;
  Index n_;
  std::map<std::vector<int>, std::size_t> index_;
  std::vector<std::vector<int>> keys_;
  std::vector<double> values_;
};

}  // namespace

DiagonalDerivatives diagonal_derivatives(
    const std::function<double(const Vector&, const Vector&)>& potential, const Vector& q,
    double step_second, double step_third, const Domain* domain) {
  const Index n = q.size();
  if (domain) {
    for (Index i = 0; i < n; ++i)
      if (!(domain->gap(q, i) > 2.0 * std::max(step_second, step_third)))
        throw DomainError("diagonal_derivatives: stencil leaves the domain at coordinate " +
                          std::to_string(i));
  }

  DiagonalDerivatives out;
  out.step_second = step_second;
  out.step_third = step_third;

  // Second derivatives: d^2 S / d in_j d fin_k, 4 evaluations per entry.
  {
    StencilEvaluator ev(potential, q, step_second);
    std::vector<std::array<std::size_t, 4>> ids(n * n);
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) {
        std::array<std::size_t, 4> e{};
        int c = 0;
        for (int s : {+1, -1})
          for (int t : {+1, -1}) {
            auto key = ev.zero_key();
            key[j] += s;
            key[n + k] += t;
            e[c++] = ev.intern(key);
          }
        ids[j * n + k] = e;
      }
    ev.evaluate();
    out.mixed_second = Matrix(n, n);
    const double denom = 4.0 * step_second * step_second;
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) {
        const auto& e = ids[j * n + k];
        out.mixed_second(j, k) =
            (ev.value(e[0]) - ev.value(e[1]) - ev.value(e[2]) + ev.value(e[3])) / denom;
      }
  }

  // Third derivatives, one lone slot and a symmetric pair on the other slot.
  // lone_is_in = true computes d^3 S / d in_j d fin_k d fin_l.
  auto third_tensor = [&](bool lone_is_in) {
    StencilEvaluator ev(potential, q, step_third);
    const double h = step_third;
    const Index lone_base = lone_is_in ? 0 : n;
    const Index pair_base = lone_is_in ? n : 0;

    struct Entry {
      Index j, k, l;
      std::vector<std::size_t> ids;
      bool pure;  // k == l
    };
    std::vector<Entry> entries;
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        for (Index l = k; l < n; ++l) {
          Entry e{j, k, l, {}, k == l};
          if (k == l) {
            // product of first difference (lone) and second difference (pair)
            for (int s : {+1, -1})
              for (int c : {+1, 0, -1}) {
                auto key = ev.zero_key();
                key[lone_base + j] += s;
                key[pair_base + k] += c;
                e.ids.push_back(ev.intern(key));
              }
          } else {
            for (int s : {+1, -1})
              for (int t : {+1, -1})
                for (int u : {+1, -1}) {
                  auto key = ev.zero_key();
                  key[lone_base + j] += s;
                  key[pair_base + k] += t;
                  key[pair_base + l] += u;
                  e.ids.push_back(ev.intern(key));
                }
          }
          entries.push_back(std::move(e));
        }
    ev.evaluate();

    Tensor3 tensor(n);
    for (const auto& e : entries) {
      double value = 0.0;
      if (e.pure) {
        // ids: (s=+1: c=+1,0,-1), (s=-1: c=+1,0,-1)
        const double plus = ev.value(e.ids[0]) - 2.0 * ev.value(e.ids[1]) + ev.value(e.ids[2]);
        const double minus = ev.value(e.ids[3]) - 2.0 * ev.value(e.ids[4]) + ev.value(e.ids[5]);
        value = (plus - minus) / (2.0 * h * h * h);
      } else {
        int c = 0;
        for (int s : {+1, -1})
          for (int t : {+1, -1})
            for (int u : {+1, -1}) value += s * t * u * ev.value(e.ids[c++]);
        value /= 8.0 * h * h * h;
      }
      tensor(e.j, e.k, e.l) = value;
      tensor(e.j, e.l, e.k) = value;
    }
    return tensor;
  };

  out.third_fin_fin_in = third_tensor(true);
  out.third_in_in_fin = third_tensor(false);
  return out;
}

namespace {

std::pair<double, double> recovery_steps(const Vector& q, const RecoverOptions& opts) {
  const double scale = std::max(1.0, q.size() ? q.cwiseAbs().maxCoeff() : 0.0);
  const double h2 = opts.step_second > 0.0 ? opts.step_second : 1e-4 * scale;
  const double h3 = opts.step_third > 0.0 ? opts.step_third : 1e-3 * scale;
  return {h2, h3};
}

RecoveredGeometry assemble(const DiagonalDerivatives& dd, double skew_divisor) {
  RecoveredGeometry rec;
  rec.metric = -dd.mixed_second;
  rec.gamma_first = -0.5 * (dd.third_in_in_fin + dd.third_fin_fin_in);
  if (skew_divisor != 0.0)
    rec.skewness = (dd.third_in_in_fin - dd.third_fin_fin_in) * (1.0 / skew_divisor);
  rec.third_fin_fin_in = dd.third_fin_fin_in;
  rec.third_in_in_fin = dd.third_in_in_fin;
  rec.step_second = dd.step_second;
  rec.step_third = dd.step_third;
  return rec;
}

}  // namespace

RecoveredGeometry recover(const ManifoldModel& model, double alpha, const Vector& q,
                          const RecoverOptions& opts) {
  require_in_domain(model, q, "recover");
  const auto [h2, h3] = recovery_steps(q, opts);
  const LagrangianSystem system = cubic_lagrangian_system(model, alpha);
  PotentialOptions popts;
  popts.tolerance = opts.shoot_tolerance;
  popts.steps = opts.steps;
  auto potential = [&](const Vector& a, const Vector& b) {
    return hamilton_principal(system, a, b, popts).value;
  };
  const DiagonalDerivatives dd = diagonal_derivatives(potential, q, h2, h3, &model.domain);
  return assemble(dd, 2.0 * alpha);
}

RecoveredGeometry recover_expmap(const ManifoldModel& model, const Vector& q,
                                 const RecoverOptions& opts) {
  require_in_domain(model, q, "recover_expmap");
  const auto [h2, h3] = recovery_steps(q, opts);
  auto potential = [&](const Vector& a, const Vector& b) {
    return expmap_potential(model, a, b, opts.shoot_tolerance, opts.steps).value;
  };
  const DiagonalDerivatives dd = diagonal_derivatives(potential, q, h2, h3, &model.domain);
  return assemble(dd, -3.0);
}

VelocityExpansion expand_divergence_lagrangian(
    const std::function<double(const Vector&, const Vector&)>& lag, const Vector& q,
    double step) {
  const Index n = q.size();
  const double h = step;
  auto at = [&](const Vector& v) { return lag(q, v); };
  const Vector zero = Vector::Zero(n);
  const double l0 = at(zero);

  VelocityExpansion out;
  out.gradient = Vector(n);
  out.metric = Matrix(n, n);
  out.third = Tensor3(n);

  auto unit = [&](Index j, double s) {
    Vector v = Vector::Zero(n);
    v[j] = s;
    return v;
  };

  for (Index j = 0; j < n; ++j)
    out.gradient[j] = (at(unit(j, h)) - at(unit(j, -h))) / (2.0 * h);

  for (Index j = 0; j < n; ++j) {
    out.metric(j, j) = (at(unit(j, h)) - 2.0 * l0 + at(unit(j, -h))) / (h * h);
    for (Index k = j + 1; k < n; ++k) {
      double sum = 0.0;
      for (int s : {+1, -1})
        for (int t : {+1, -1}) {
          Vector v = Vector::Zero(n);
          v[j] = s * h;
          v[k] = t * h;
          sum += s * t * at(v);
        }
      out.metric(j, k) = out.metric(k, j) = sum / (4.0 * h * h);
    }
  }

  auto set_symmetric = [&](Index a, Index b, Index c, double value) {
    out.third(a, b, c) = out.third(a, c, b) = out.third(b, a, c) = value;
    out.third(b, c, a) = out.third(c, a, b) = out.third(c, b, a) = value;
  };

  for (Index j = 0; j < n; ++j)
    for (Index k = j; k < n; ++k)
      for (Index l = k; l < n; ++l) {
        double value = 0.0;
        if (j == k && k == l) {
          value = (at(unit(j, 2 * h)) - 2.0 * at(unit(j, h)) + 2.0 * at(unit(j, -h)) -
                   at(unit(j, -2 * h))) /
                  (2.0 * h * h * h);
        } else if (j == k || k == l) {
          // patterns (j,j,l) and (j,k,k) inside the ordered loop
          const Index dbl = (j == k) ? j : k;
          const Index single = (j == k) ? l : j;
          double sum = 0.0;
          for (int s : {+1, -1}) {
            Vector base = Vector::Zero(n);
            base[single] = s * h;
            Vector vp = base, vm = base;
            vp[dbl] += h;
            vm[dbl] -= h;
            sum += s * (at(vp) - 2.0 * at(base) + at(vm));
          }
          value = sum / (2.0 * h * h * h);
        } else {
          double sum = 0.0;
          for (int s : {+1, -1})
            for (int t : {+1, -1})
              for (int u : {+1, -1}) {
                Vector v = Vector::Zero(n);
                v[j] = s * h;
                v[k] = t * h;
                v[l] = u * h;
                sum += s * t * u * at(v);
              }
          value = sum / (8.0 * h * h * h);
        }
        set_symmetric(j, k, l, value);
      }

  return out;
}

namespace {

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json tensor_json(const Tensor3& t) {
  nlohmann::json out = nlohmann::json::array();
  for (Index j = 0; j < t.dimension(); ++j) {
    nlohmann::json plane = nlohmann::json::array();
    for (Index k = 0; k < t.dimension(); ++k) {
      nlohmann::json row = nlohmann::json::array();
      for (Index l = 0; l < t.dimension(); ++l) row.push_back(t(j, k, l));
      plane.push_back(std::move(row));
    }
    out.push_back(std::move(plane));
  }
  return out;
}

double max_abs_diff(const Tensor3& a, const Tensor3& b) { return (a - b).maxAbs(); }

}  // namespace

std::string recovery_report_json(const ManifoldModel& model, double alpha, const Vector& q,
                                 const RecoveredGeometry& rec) {
  nlohmann::json report;
  report["model"] = model.name;
  report["point"] = std::vector<double>(q.data(), q.data() + q.size());
  report["alpha"] = alpha;
  report["step"] = {{"second", rec.step_second}, {"third", rec.step_third}};
  report["metric"] = matrix_json(rec.metric);
  report["gamma_first"] = tensor_json(rec.gamma_first);
  report["skewness"] = rec.skewness ? tensor_json(*rec.skewness) : nlohmann::json();
  report["third_fin_fin_in"] = tensor_json(rec.third_fin_fin_in);
  report["third_in_in_fin"] = tensor_json(rec.third_in_in_fin);
  if (model.metric && model.skewness) {
    nlohmann::json errors;
    errors["metric"] = (rec.metric - metric_at(model, q)).cwiseAbs().maxCoeff();
    errors["gamma_first"] =
        max_abs_diff(rec.gamma_first, levi_civita_first(model, q).first_kind);
    if (rec.skewness)
      errors["skewness"] = max_abs_diff(*rec.skewness, skewness_at(model, q));
    report["errors_vs_model"] = std::move(errors);
  }
  return report.dump(2);
}

}  // namespace infogeo
