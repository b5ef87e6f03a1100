#include "infogeo/geometry.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace infogeo {

double fd_step(double coord) { return std::max(1e-5, 1e-5 * std::abs(coord)); }

double fit_step(const Domain& domain, const Vector& q, Index i, double h) {
  for (int shrink = 0; shrink <= 6; ++shrink) {
    if (domain.gap(q, i) > h) return h;
    h /= 2.0;
  }
  throw DomainError("fit_step: finite-difference stencil leaves the domain at coordinate " +
                    std::to_string(i));
}

namespace {

// d g / d q^j for all j, central differences with the step policy.
std::vector<Matrix> metric_derivatives(const ManifoldModel& model, const Vector& q,
                                       double step_override) {
  std::vector<Matrix> dg(model.dim);
  for (Index j = 0; j < model.dim; ++j) {
    const double h0 = step_override > 0.0 ? step_override : fd_step(q[j]);
    const double h = fit_step(model.domain, q, j, h0);
    Vector qp = q, qm = q;
    qp[j] += h;
    qm[j] -= h;
    dg[j] = (model.metric(qp) - model.metric(qm)) / (2.0 * h);
  }
  return dg;
}

ConnectionCoefficients from_first_kind(const ManifoldModel& model, const Vector& q,
                                       Tensor3 first) {
  ConnectionCoefficients c;
  c.point = q;
  c.second_kind = raise_first_index(model.metric(q), first);
  c.first_kind = std::move(first);
  return c;
}

Tensor3 first_kind_fd(const ManifoldModel& model, const Vector& q, double step_override) {
  const std::vector<Matrix> dg = metric_derivatives(model, q, step_override);
  Tensor3 gamma(model.dim);
  for (Index j = 0; j < model.dim; ++j)
    for (Index k = 0; k < model.dim; ++k)
      for (Index l = 0; l < model.dim; ++l)
        gamma(j, k, l) = 0.5 * (dg[k](j, l) + dg[l](j, k) - dg[j](k, l));
  return gamma;
}

}  // namespace

Tensor3 levi_civita_first_kind(const ManifoldModel& model, const Vector& q) {
  require_in_domain(model, q, "levi_civita_first");
  if (model.christoffel_first) return model.christoffel_first(q);
  return first_kind_fd(model, q, 0.0);
}

ConnectionCoefficients levi_civita_first(const ManifoldModel& model, const Vector& q) {
  return from_first_kind(model, q, levi_civita_first_kind(model, q));
}

ConnectionCoefficients levi_civita_first_fd(const ManifoldModel& model, const Vector& q,
                                            double step) {
  require_in_domain(model, q, "levi_civita_first_fd");
  return from_first_kind(model, q, first_kind_fd(model, q, step));
}

ConnectionCoefficients alpha_connection(const ManifoldModel& model, const Vector& q,
                                        double alpha) {
  Tensor3 first = levi_civita_first_kind(model, q);
  first -= (alpha / 2.0) * skewness_at(model, q);
  return from_first_kind(model, q, std::move(first));
}

Tensor3 raise_first_index(const Matrix& g, const Tensor3& first_kind) {
  const Index n = first_kind.dimension();
  Eigen::LDLT<Matrix> solver(g);
  Tensor3 second(n);
  Vector rhs(n);
  for (Index k = 0; k < n; ++k)
    for (Index l = 0; l < n; ++l) {
      for (Index m = 0; m < n; ++m) rhs[m] = first_kind(m, k, l);
      const Vector raised = solver.solve(rhs);
      for (Index j = 0; j < n; ++j) second(j, k, l) = raised[j];
    }
  return second;
}

Tensor3 lower_first_index(const Matrix& g, const Tensor3& second_kind) {
  const Index n = second_kind.dimension();
  Tensor3 first(n);
  for (Index j = 0; j < n; ++j)
    for (Index k = 0; k < n; ++k)
      for (Index l = 0; l < n; ++l) {
        double s = 0.0;
        for (Index m = 0; m < n; ++m) s += g(j, m) * second_kind(m, k, l);
        first(j, k, l) = s;
      }
  return first;
}

Matrix immersion_jacobian(const Immersion& im, const Vector& q) {
  if (im.jacobian) return im.jacobian(q);
  Matrix j(im.target_dim, im.source_dim);
  for (Index c = 0; c < im.source_dim; ++c) {
    const double h = fd_step(q[c]);
    Vector qp = q, qm = q;
    qp[c] += h;
    qm[c] -= h;
    j.col(c) = (im.map(qp) - im.map(qm)) / (2.0 * h);
  }
  return j;
}

std::pair<Matrix, Tensor3> pullback(const Immersion& im,
                                    const std::function<Matrix(const Vector&)>& ambient_metric,
                                    const std::function<Tensor3(const Vector&)>& ambient_skewness,
                                    const Vector& q) {
  const Matrix j = immersion_jacobian(im, q);
  Eigen::ColPivHouseholderQR<Matrix> qr(j);
  if (qr.rank() < im.source_dim)
    throw DegeneratePullback("pullback: jacobian rank " + std::to_string(qr.rank()) +
                             " < source dimension " + std::to_string(im.source_dim));
  const Vector x = im.map(q);
  const Matrix g_amb = ambient_metric(x);
  const Tensor3 t_amb = ambient_skewness(x);
  Matrix g = j.transpose() * g_amb * j;

  const Index n = im.source_dim;
  const Index m = im.target_dim;
  Tensor3 t(n);
  for (Index p = 0; p < n; ++p)
    for (Index r = 0; r < n; ++r)
      for (Index s = 0; s < n; ++s) {
        double sum = 0.0;
        for (Index a = 0; a < m; ++a)
          for (Index b = 0; b < m; ++b)
            for (Index c = 0; c < m; ++c)
              sum += t_amb(a, b, c) * j(a, p) * j(b, r) * j(c, s);
        t(p, r, s) = sum;
      }
  return {std::move(g), std::move(t)};
}

ManifoldModel pullback_model(std::string name, const Immersion& im,
                             const ManifoldModel& ambient, Domain source_domain) {
  ManifoldModel model;
  model.name = std::move(name);
  model.dim = im.source_dim;
  model.domain = std::move(source_domain);
  model.metric = [im, ambient](const Vector& q) {
    return pullback(im, ambient.metric, ambient.skewness, q).first;
  };
  model.skewness = [im, ambient](const Vector& q) {
    return pullback(im, ambient.metric, ambient.skewness, q).second;
  };
  return model;
}

}  // namespace infogeo
