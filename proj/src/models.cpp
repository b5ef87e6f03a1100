#include "infogeo/models.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>

#include "infogeo/geometry.hpp"

namespace infogeo {

ManifoldModel exponential_model() {
  ManifoldModel m;
  m.name = "exponential1d";
  m.dim = 1;
  m.domain = Domain::positive(1);
  m.metric = [](const Vector& q) {
    Matrix g(1, 1);
    g(0, 0) = 1.0 / (q[0] * q[0]);
    return g;
  };
  m.skewness = [](const Vector& q) {
    Tensor3 t(1);
    t(0, 0, 0) = -2.0 / (q[0] * q[0] * q[0]);
    return t;
  };
  m.christoffel_first = [](const Vector& q) {
    Tensor3 g(1);
    g(0, 0, 0) = -1.0 / (q[0] * q[0] * q[0]);
    return g;
  };
  return m;
}

ManifoldModel exponential_log_model() {
  ManifoldModel m;
  m.name = "exponential-log";
  m.dim = 1;
  m.domain = Domain::unbounded(1);
  m.metric = [](const Vector&) { return Matrix::Identity(1, 1); };
  m.skewness = [](const Vector&) {
    Tensor3 t(1);
    t(0, 0, 0) = -2.0;
    return t;
  };
  m.christoffel_first = [](const Vector&) { return Tensor3::Zero(1); };
  return m;
}

ManifoldModel euclidean_cubic_r3() {
  ManifoldModel m;
  m.name = "euclidean-cubic-r3";
  m.dim = 3;
  m.domain = Domain::unbounded(3);
  m.metric = [](const Vector&) { return Matrix::Identity(3, 3); };
  m.skewness = [](const Vector&) {
    Tensor3 t(3);
    for (Index i = 0; i < 3; ++i) t(i, i, i) = 1.0;
    return t;
  };
  m.christoffel_first = [](const Vector&) { return Tensor3::Zero(3); };
  return m;
}

Immersion sphere_immersion() {
  Immersion im;
  im.source_dim = 2;
  im.target_dim = 3;
  im.map = [](const Vector& q) {
    const double theta = q[0], phi = q[1];
    Vector x(3);
    x << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta);
    return x;
  };
  im.jacobian = [](const Vector& q) {
    const double theta = q[0], phi = q[1];
    Matrix j(3, 2);
    j << std::cos(theta) * std::cos(phi), -std::sin(theta) * std::sin(phi),
        std::cos(theta) * std::sin(phi), std::sin(theta) * std::cos(phi),  //
        -std::sin(theta), 0.0;
    return j;
  };
  return im;
}

namespace {

Domain sphere_domain() {
  Vector lo(2), hi(2);
  lo << 0.0, 0.0;
  hi << M_PI, 2.0 * M_PI;
  return Domain::box(lo, hi, 1e-3);
}

Tensor3 sphere_christoffel(const Vector& q) {
  // g = diag(1, sin^2 theta): the only nonzero first-kind symbols.
  const double sc = std::sin(q[0]) * std::cos(q[0]);
  Tensor3 g(2);
  g(0, 1, 1) = -sc;
  g(1, 0, 1) = sc;
  g(1, 1, 0) = sc;
  return g;
}

}  // namespace

ManifoldModel sphere_pullback_model() {
  const Immersion im = sphere_immersion();
  const ManifoldModel ambient = euclidean_cubic_r3();
  ManifoldModel m = pullback_model("sphere-pullback", im, ambient, sphere_domain());
  m.christoffel_first = sphere_christoffel;
  return m;
}

ManifoldModel sphere_round_model() {
  ManifoldModel m;
  m.name = "sphere-round";
  m.dim = 2;
  m.domain = sphere_domain();
  m.metric = [](const Vector& q) {
    Matrix g = Matrix::Zero(2, 2);
    g(0, 0) = 1.0;
    g(1, 1) = std::sin(q[0]) * std::sin(q[0]);
    return g;
  };
  m.skewness = [](const Vector&) { return Tensor3::Zero(2); };
  m.christoffel_first = sphere_christoffel;
  return m;
}

LagrangianSystem kl_free_particle() {
  LagrangianSystem sys;
  sys.name = "kl-free";
  sys.dim = 1;
  sys.domain = Domain::unbounded(1);
  sys.lagrangian = [](const Vector&, const Vector& v) { return std::expm1(v[0]) - v[0]; };
  sys.momentum = [](const Vector&, const Vector& v) {
    Vector p(1);
    p[0] = std::expm1(v[0]);
    return p;
  };
  sys.acceleration = [](const Vector&, const Vector&) { return Vector::Zero(1); };
  sys.energy = [](const Vector&, const Vector& v) {
    return v[0] * std::expm1(v[0]) - (std::expm1(v[0]) - v[0]);
  };
  sys.boundary_guess = [](const Vector& q_in, const Vector& q_fin) {
    return Vector(q_fin - q_in);
  };
  return sys;
}

ParametricDensity exponential_density() {
  ParametricDensity d;
  d.sample_domain = {0.0, std::numeric_limits<double>::infinity()};
  d.parameter_dim = 1;
  d.density = [](double x, const Vector& xi) {
    return x >= 0.0 ? xi[0] * std::exp(-x * xi[0]) : 0.0;
  };
  d.log_density_gradient = [](double x, const Vector& xi) {
    Vector s(1);
    s[0] = 1.0 / xi[0] - x;
    return s;
  };
  return d;
}

double closed_form_potential_exponential(double xi_in, double xi_fin, double alpha) {
  const double r = std::log(xi_fin / xi_in);
  return 0.5 * r * r - (alpha / 3.0) * r * r * r;
}

double great_circle_distance(const Immersion& im, const Vector& a, const Vector& b) {
  const double dot = im.map(a).dot(im.map(b));
  return std::acos(std::clamp(dot, -1.0, 1.0));
}

namespace {

std::vector<BuiltinModel> make_builtins() {
  std::vector<BuiltinModel> models;

  auto tensor_model = [](ManifoldModel m,
                         std::function<double(const Vector&, const Vector&, double)> oracle) {
    BuiltinModel b;
    b.name = m.name;
    b.system = [m](double alpha) { return cubic_lagrangian_system(m, alpha); };
    b.manifold = std::move(m);
    b.potential_oracle = std::move(oracle);
    return b;
  };

  models.push_back(tensor_model(exponential_model(), [](const Vector& a, const Vector& b,
                                                        double alpha) {
    return closed_form_potential_exponential(a[0], b[0], alpha);
  }));

  models.push_back(
      tensor_model(exponential_log_model(), [](const Vector& a, const Vector& b, double alpha) {
        const double r = b[0] - a[0];
        return 0.5 * r * r - (alpha / 3.0) * r * r * r;
      }));

  {
    BuiltinModel b;
    b.name = "kl-free";
    b.system = [](double) { return kl_free_particle(); };
    b.potential_oracle = [](const Vector& a, const Vector& bq, double) {
      const double d = bq[0] - a[0];
      return std::expm1(d) - d;
    };
    models.push_back(std::move(b));
  }

  models.push_back(
      tensor_model(euclidean_cubic_r3(), [](const Vector& a, const Vector& b, double alpha) {
        const Vector d = b - a;
        return 0.5 * d.squaredNorm() +
               (alpha / 6.0) * (d[0] * d[0] * d[0] + d[1] * d[1] * d[1] + d[2] * d[2] * d[2]);
      }));

  models.push_back(tensor_model(sphere_pullback_model(), {}));

  models.push_back(
      tensor_model(sphere_round_model(), [](const Vector& a, const Vector& b, double) {
        const double d = great_circle_distance(sphere_immersion(), a, b);
        return 0.5 * d * d;
      }));

  return models;
}

}  // namespace

const std::vector<BuiltinModel>& builtin_models() {
  static const std::vector<BuiltinModel> models = make_builtins();
  return models;
}

const BuiltinModel* find_builtin(std::string_view name) {
  for (const auto& m : builtin_models())
    if (m.name == name) return &m;
  return nullptr;
}

namespace {

double parse_bound(const nlohmann::json& j, double fallback) {
  if (j.is_null()) return fallback;
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw Error("load_model_spec: bad domain bound " + j.dump());
}

}  // namespace

BuiltinModel load_model_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_model_spec: cannot open '" + path + "'");
  nlohmann::json spec;
  try {
    in >> spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error("load_model_spec: parse error in '" + path + "': " + e.what());
  }

  if (!spec.contains("model") || !spec["model"].is_string())
    throw Error("load_model_spec: missing \"model\" name in '" + path + "'");
  const std::string name = spec["model"].get<std::string>();
  const BuiltinModel* base = find_builtin(name);
  if (!base) throw Error("load_model_spec: unknown builtin model '" + name + "'");
  BuiltinModel model = *base;

  const Index dim = model.manifold ? model.manifold->dim : 1;
  if (spec.contains("dim") && spec["dim"].get<Index>() != dim)
    throw Error("load_model_spec: dim " + spec["dim"].dump() + " does not match builtin '" +
                name + "' (dim " + std::to_string(dim) + ")");

  if (spec.contains("domain")) {
    const auto& dom = spec["domain"];
    if (!dom.is_array() || Index(dom.size()) != dim)
      throw Error("load_model_spec: domain must list " + std::to_string(dim) + " intervals");
    Domain restricted =
        model.manifold ? model.manifold->domain : kl_free_particle().domain;
    for (Index i = 0; i < dim; ++i) {
      const auto& interval = dom[i];
      if (!interval.is_array() || interval.size() != 2)
        throw Error("load_model_spec: each domain entry must be [lo, hi]");
      const double lo = parse_bound(interval[0], restricted.lower[i]);
      const double hi = parse_bound(interval[1], restricted.upper[i]);
      if (!(lo < hi)) throw Error("load_model_spec: empty interval in domain");
      if (lo < restricted.lower[i] || hi > restricted.upper[i])
        throw Error("load_model_spec: domain exceeds the builtin domain of '" + name + "'");
      restricted.lower[i] = lo;
      restricted.upper[i] = hi;
    }
    if (model.manifold) {
      model.manifold->domain = restricted;
      const ManifoldModel m = *model.manifold;
      model.system = [m](double alpha) { return cubic_lagrangian_system(m, alpha); };
    } else {
      model.system = [restricted](double) {
        LagrangianSystem sys = kl_free_particle();
        sys.domain = restricted;
        return sys;
      };
    }
  }
  return model;
}

}  // namespace infogeo
