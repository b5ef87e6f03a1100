// Batch front door: evaluate potentials over point pairs and grids, run
// diagonal recovery reports, evaluate Fisher-Rao tensors and KL divergences
// by quadrature, and verify builtin models against their closed-form oracles.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "infogeo/geometry.hpp"
#include "infogeo/models.hpp"
#include "infogeo/parallel.hpp"
#include "infogeo/potential.hpp"

using namespace infogeo;
using nlohmann::json;

namespace {

struct Options {
  std::string model;
  double alpha = 0.0;
  std::vector<std::string> points;
  std::string grid;
  int steps = 200;
  double tol = 1e-10;
  double fd_step = 0.0;
  std::string out;
  std::string format;  // "" = command default (csv for rows, json for reports)
  bool keep_going = false;
  std::string config;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

Vector parse_point(const std::string& text) {
  const std::vector<std::string> parts = split(text, ',');
  Vector q(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::size_t used = 0;
    q[i] = std::stod(parts[i], &used);
    if (used != parts[i].size())
      throw CLI::ValidationError("--point", "bad coordinate '" + parts[i] + "'");
  }
  return q;
}

std::pair<Vector, Vector> parse_pair(const std::string& text) {
  const std::vector<std::string> parts = split(text, ':');
  if (parts.size() != 2)
    throw CLI::ValidationError("--point", "expected 'q_in:q_fin', got '" + text + "'");
  return {parse_point(parts[0]), parse_point(parts[1])};
}

// --grid "lo:hi:count[,lo:hi:count...]" -> mesh of points
std::vector<Vector> parse_grid(const std::string& text) {
  std::vector<std::vector<double>> axes;
  for (const std::string& spec : split(text, ',')) {
    const std::vector<std::string> parts = split(spec, ':');
    if (parts.size() != 3)
      throw CLI::ValidationError("--grid", "expected 'lo:hi:count', got '" + spec + "'");
    const double lo = std::stod(parts[0]);
    const double hi = std::stod(parts[1]);
    const int count = std::stoi(parts[2]);
    if (count < 1) throw CLI::ValidationError("--grid", "count must be >= 1");
    std::vector<double> axis(count);
    for (int i = 0; i < count; ++i)
      axis[i] = count == 1 ? lo : lo + (hi - lo) * i / double(count - 1);
    axes.push_back(std::move(axis));
  }
  std::vector<Vector> mesh;
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    Vector q(axes.size());
    for (std::size_t c = 0; c < axes.size(); ++c) q[c] = axes[c][idx[c]];
    mesh.push_back(std::move(q));
    std::size_t c = axes.size();
    bool advanced = false;
    while (c > 0) {
      --c;
      if (++idx[c] < axes[c].size()) {
        advanced = true;
        break;
      }
      idx[c] = 0;
    }
    if (!advanced) return mesh;
  }
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json vector_json(const Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json tensor_json(const Tensor3& t) {
  json out = json::array();
  for (Index j = 0; j < t.dimension(); ++j) {
    json plane = json::array();
    for (Index k = 0; k < t.dimension(); ++k) {
      json row = json::array();
      for (Index l = 0; l < t.dimension(); ++l) row.push_back(t(j, k, l));
      plane.push_back(std::move(row));
    }
    out.push_back(std::move(plane));
  }
  return out;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw CLI::ValidationError("--out", "cannot open '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

BuiltinModel resolve_model(const std::string& name) {
  if (name.empty()) throw CLI::ValidationError("--model", "a model is required");
  if (std::filesystem::exists(name)) return load_model_spec(name);
  const BuiltinModel* builtin = find_builtin(name);
  if (!builtin)
    throw CLI::ValidationError(
        "--model", "unknown model '" + name + "' (not a builtin, not a spec file)");
  return *builtin;
}

// ---------------------------------------------------------------------------
// potential / scan

struct PotentialRow {
  Vector q_in, q_fin;
  double value = 0.0, residual = 0.0, quadrature_error = 0.0;
  bool ok = false;
  std::string error;
};

int emit_potential_rows(const BuiltinModel& model, const Options& opt,
                        const std::vector<std::pair<Vector, Vector>>& pairs) {
  const LagrangianSystem system = model.system(opt.alpha);
  PotentialOptions popts;
  popts.tolerance = opt.tol;
  popts.steps = opt.steps;

  const auto rows = parallel_map(pairs.size(), [&](std::size_t i) {
    PotentialRow row;
    row.q_in = pairs[i].first;
    row.q_fin = pairs[i].second;
    try {
      const PotentialEvaluation eval = hamilton_principal(system, row.q_in, row.q_fin, popts);
      row.value = eval.value;
      row.residual = eval.shooting.residual;
      row.quadrature_error = eval.quadrature_error;
      row.ok = true;
    } catch (const Error& e) {
      row.error = e.what();
      row.value = row.residual = row.quadrature_error = std::nan("");
    }
    return row;
  });

  Output output(opt.out);
  std::ostream& os = output.stream();
  const Index n = system.dim;
  bool all_ok = true;
  for (const auto& row : rows) all_ok = all_ok && row.ok;

  if (opt.format == "json") {
    json list = json::array();
    for (const auto& row : rows) {
      if (!row.ok && !opt.keep_going) break;
      json r;
      r["q_in"] = vector_json(row.q_in);
      r["q_fin"] = vector_json(row.q_fin);
      r["S"] = row.ok ? json(row.value) : json();
      r["residual"] = row.ok ? json(row.residual) : json();
      r["quadrature_error"] = row.ok ? json(row.quadrature_error) : json();
      if (!row.ok) r["error"] = row.error;
      list.push_back(std::move(r));
    }
    os << list.dump(2) << "\n";
  } else {
    for (Index i = 1; i <= n; ++i) os << "qin" << i << ",";
    for (Index i = 1; i <= n; ++i) os << "qfin" << i << ",";
    os << "S,residual,quadrature_error\n";
    for (const auto& row : rows) {
      if (!row.ok && !opt.keep_going) break;
      for (Index i = 0; i < n; ++i) os << fmt(row.q_in[i]) << ",";
      for (Index i = 0; i < n; ++i) os << fmt(row.q_fin[i]) << ",";
      os << fmt(row.value) << "," << fmt(row.residual) << "," << fmt(row.quadrature_error)
         << "\n";
    }
  }
  for (const auto& row : rows)
    if (!row.ok) {
      std::cerr << "error: " << row.error << "\n";
      if (!opt.keep_going) break;
    }
  return all_ok ? 0 : 1;
}

int cmd_potential(const Options& opt) {
  const BuiltinModel model = resolve_model(opt.model);
  std::vector<std::pair<Vector, Vector>> pairs;
  for (const std::string& p : opt.points) pairs.push_back(parse_pair(p));
  if (!opt.grid.empty()) {
    const std::vector<Vector> mesh = parse_grid(opt.grid);
    for (const Vector& a : mesh)
      for (const Vector& b : mesh) pairs.emplace_back(a, b);
  }
  if (pairs.empty())
    throw CLI::ValidationError("potential", "no point pairs (use --point in:fin or --grid)");
  return emit_potential_rows(model, opt, pairs);
}

int cmd_scan(const Options& opt) {
  const BuiltinModel model = resolve_model(opt.model);
  if (opt.points.size() != 1)
    throw CLI::ValidationError("scan", "scan needs exactly one --point (the fixed q_in)");
  if (opt.grid.empty()) throw CLI::ValidationError("scan", "scan needs --grid for q_fin");
  const Vector q_in = parse_point(opt.points.front());
  std::vector<std::pair<Vector, Vector>> pairs;
  for (const Vector& b : parse_grid(opt.grid)) pairs.emplace_back(q_in, b);
  return emit_potential_rows(model, opt, pairs);
}

// ---------------------------------------------------------------------------
// recover

int cmd_recover(const Options& opt) {
  const BuiltinModel model = resolve_model(opt.model);
  if (!model.manifold)
    throw CLI::ValidationError("recover", "model '" + model.name + "' has no tensor chart");
  if (opt.points.empty()) throw CLI::ValidationError("recover", "recover needs --point");
  if (opt.format == "csv")
    throw CLI::ValidationError("--format", "recover reports are JSON only");

  RecoverOptions ropts;
  ropts.steps = opt.steps;
  if (opt.fd_step > 0.0) {
    ropts.step_third = opt.fd_step;
    ropts.step_second = opt.fd_step / 10.0;
  }

  Output output(opt.out);
  json reports = json::array();
  int status = 0;
  for (const std::string& p : opt.points) {
    const Vector q = parse_point(p);
    try {
      const RecoveredGeometry rec = recover(*model.manifold, opt.alpha, q, ropts);
      reports.push_back(json::parse(recovery_report_json(*model.manifold, opt.alpha, q, rec)));
    } catch (const Error& e) {
      json failed;
      failed["point"] = vector_json(q);
      failed["error"] = e.what();
      reports.push_back(std::move(failed));
      std::cerr << "error: " << e.what() << "\n";
      status = 1;
      if (!opt.keep_going) break;
    }
  }
  output.stream() << reports.dump(2) << "\n";
  return status;
}

// ---------------------------------------------------------------------------
// fisher / kl

const ParametricDensity& density_for(const std::string& model) {
  static const ParametricDensity exponential = exponential_density();
  if (model == "exponential1d") return exponential;
  throw CLI::ValidationError("--model", "no builtin density for '" + model + "'");
}

int cmd_fisher(const Options& opt) {
  const ParametricDensity& density = density_for(opt.model);
  if (opt.points.empty()) throw CLI::ValidationError("fisher", "fisher needs --point");

  struct Row {
    Vector xi;
    Matrix g;
    Tensor3 t;
  };
  std::vector<Row> rows;
  for (const std::string& p : opt.points) {
    Row row;
    row.xi = parse_point(p);
    row.g = fisher_rao_metric(density, row.xi);
    row.t = skewness_tensor(density, row.xi);
    rows.push_back(std::move(row));
  }

  Output output(opt.out);
  std::ostream& os = output.stream();
  if (opt.format == "json") {
    json list = json::array();
    for (const auto& row : rows) {
      json r;
      r["xi"] = vector_json(row.xi);
      r["metric"] = matrix_json(row.g);
      r["skewness"] = tensor_json(row.t);
      list.push_back(std::move(r));
    }
    os << list.dump(2) << "\n";
  } else {
    const Index n = rows.front().xi.size();
    for (Index i = 1; i <= n; ++i) os << "xi" << i << ",";
    for (Index j = 1; j <= n; ++j)
      for (Index k = 1; k <= n; ++k) os << "g" << j << k << ",";
    bool first = true;
    for (Index j = 1; j <= n; ++j)
      for (Index k = 1; k <= n; ++k)
        for (Index l = 1; l <= n; ++l) {
          os << (first ? "" : ",") << "T" << j << k << l;
          first = false;
        }
    os << "\n";
    for (const auto& row : rows) {
      for (Index i = 0; i < n; ++i) os << fmt(row.xi[i]) << ",";
      for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k) os << fmt(row.g(j, k)) << ",";
      first = true;
      for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k)
          for (Index l = 0; l < n; ++l) {
            os << (first ? "" : ",") << fmt(row.t(j, k, l));
            first = false;
          }
      os << "\n";
    }
  }
  return 0;
}

int cmd_kl(const Options& opt) {
  const ParametricDensity& density = density_for(opt.model);
  if (opt.points.empty())
    throw CLI::ValidationError("kl", "kl needs --point xi_in:xi_fin pairs");

  Output output(opt.out);
  std::ostream& os = output.stream();
  std::vector<std::pair<Vector, Vector>> pairs;
  for (const std::string& p : opt.points) pairs.push_back(parse_pair(p));

  if (opt.format == "json") {
    json list = json::array();
    for (const auto& [a, b] : pairs) {
      json r;
      r["xi_in"] = vector_json(a);
      r["xi_fin"] = vector_json(b);
      r["kl"] = kl_divergence(density, a, b);
      list.push_back(std::move(r));
    }
    os << list.dump(2) << "\n";
  } else {
    const Index n = pairs.front().first.size();
    for (Index i = 1; i <= n; ++i) os << "xi_in" << i << ",";
    for (Index i = 1; i <= n; ++i) os << "xi_fin" << i << ",";
    os << "kl\n";
    for (const auto& [a, b] : pairs) {
      for (Index i = 0; i < n; ++i) os << fmt(a[i]) << ",";
      for (Index i = 0; i < n; ++i) os << fmt(b[i]) << ",";
      os << fmt(kl_divergence(density, a, b)) << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct Check {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

Check oracle_check(const BuiltinModel& model, double alpha,
                   const std::vector<std::pair<Vector, Vector>>& pairs, double tolerance,
                   const Options& opt) {
  Check check{"potential_vs_closed_form", 0.0, tolerance, false};
  const LagrangianSystem system = model.system(alpha);
  PotentialOptions popts;
  popts.tolerance = opt.tol;
  popts.steps = opt.steps;
  for (const auto& [a, b] : pairs) {
    const double s = hamilton_principal(system, a, b, popts).value;
    check.max_error =
        std::max(check.max_error, std::abs(s - model.potential_oracle(a, b, alpha)));
  }
  check.pass = check.max_error <= tolerance;
  return check;
}

std::vector<Check> recovery_checks(const ManifoldModel& model, double alpha, const Vector& q,
                                   const Options& opt) {
  RecoverOptions ropts;
  ropts.steps = opt.steps;
  if (opt.fd_step > 0.0) {
    ropts.step_third = opt.fd_step;
    ropts.step_second = opt.fd_step / 10.0;
  }
  const RecoveredGeometry rec = recover(model, alpha, q, ropts);
  std::vector<Check> checks;
  checks.push_back({"metric_recovery",
                    (rec.metric - metric_at(model, q)).cwiseAbs().maxCoeff(), 1e-4, false});
  checks.push_back({"gamma_recovery",
                    (rec.gamma_first - levi_civita_first(model, q).first_kind).maxAbs(), 5e-3,
                    false});
  if (rec.skewness)
    checks.push_back({"skewness_recovery", (*rec.skewness - skewness_at(model, q)).maxAbs(),
                      5e-3, false});
  for (auto& c : checks) c.pass = c.max_error <= c.tolerance;
  return checks;
}

int cmd_verify(const Options& opt) {
  const BuiltinModel model = resolve_model(opt.model);
  std::vector<Check> checks;

  Vector q;
  if (!opt.points.empty()) {
    q = parse_point(opt.points.front());
  } else if (model.name == "exponential1d") {
    q = parse_point("1");
  } else if (model.name == "exponential-log") {
    q = parse_point("0");
  } else if (model.name == "euclidean-cubic-r3") {
    q = parse_point("0.1,-0.2,0.3");
  } else if (model.manifold) {
    q = parse_point("1.2,0.9");
  }

  if (model.manifold) {
    const auto rc = recovery_checks(*model.manifold, opt.alpha, q, opt);
    checks.insert(checks.end(), rc.begin(), rc.end());
  }

  if (model.potential_oracle) {
    std::vector<std::pair<Vector, Vector>> pairs;
    double tolerance = 1e-6;
    if (model.name == "exponential1d") {
      for (double b : {0.6, 1.1, 1.9})
        pairs.emplace_back(parse_point("0.8"), parse_point(fmt(b)));
    } else if (model.name == "exponential-log" || model.name == "kl-free") {
      tolerance = 1e-8;
      for (double b : {-0.6, 0.3, 0.9})
        pairs.emplace_back(parse_point("0"), parse_point(fmt(b)));
    } else if (model.name == "euclidean-cubic-r3") {
      tolerance = 1e-8;
      pairs.emplace_back(parse_point("0,0,0"), parse_point("0.3,-0.2,0.4"));
      pairs.emplace_back(parse_point("0.1,0.1,0.1"), parse_point("0.5,0.4,-0.3"));
    } else if (model.name == "sphere-round") {
      tolerance = 1e-5;
      pairs.emplace_back(parse_point("1.2,0.9"), parse_point("1.6,1.4"));
      pairs.emplace_back(parse_point("0.8,2.0"), parse_point("1.9,2.9"));
    }
    if (!pairs.empty())
      checks.push_back(oracle_check(model, opt.alpha, pairs, tolerance, opt));
  }

  bool pass = true;
  json report;
  report["model"] = model.name;
  report["alpha"] = opt.alpha;
  json list = json::array();
  for (const auto& c : checks) {
    json entry;
    entry["name"] = c.name;
    entry["max_error"] = c.max_error;
    entry["tolerance"] = c.tolerance;
    entry["pass"] = c.pass;
    list.push_back(std::move(entry));
    pass = pass && c.pass;
  }
  report["checks"] = std::move(list);
  report["pass"] = pass;

  Output output(opt.out);
  output.stream() << report.dump(2) << "\n";
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------

void overlay_config(Options& opt, const CLI::App& cmd) {
  if (opt.config.empty()) return;
  std::ifstream in(opt.config);
  if (!in) throw CLI::ValidationError("--config", "cannot open '" + opt.config + "'");
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw CLI::ValidationError("--config", e.what());
  }
  auto absent = [&](const std::string& flag) { return cmd.count(flag) == 0; };
  if (cfg.contains("model") && absent("--model")) opt.model = cfg["model"].get<std::string>();
  if (cfg.contains("alpha") && absent("--alpha")) opt.alpha = cfg["alpha"].get<double>();
  if (cfg.contains("points") && absent("--point"))
    opt.points = cfg["points"].get<std::vector<std::string>>();
  if (cfg.contains("grid") && absent("--grid")) opt.grid = cfg["grid"].get<std::string>();
  if (cfg.contains("steps") && absent("--steps")) opt.steps = cfg["steps"].get<int>();
  if (cfg.contains("tol") && absent("--tol")) opt.tol = cfg["tol"].get<double>();
  if (cfg.contains("fd_step") && absent("--fd-step"))
    opt.fd_step = cfg["fd_step"].get<double>();
  if (cfg.contains("out") && absent("--out")) opt.out = cfg["out"].get<std::string>();
  if (cfg.contains("format") && absent("--format"))
    opt.format = cfg["format"].get<std::string>();
  if (cfg.contains("keep_going") && absent("--keep-going"))
    opt.keep_going = cfg["keep_going"].get<bool>();
  if (!opt.format.empty() && opt.format != "csv" && opt.format != "json")
    throw CLI::ValidationError("--format", "expected csv or json, got '" + opt.format + "'");
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--model", opt.model, "builtin model name or model spec JSON path");
  cmd->add_option("--alpha", opt.alpha, "alpha parameter of the cubic Lagrangian");
  cmd->add_option("--point", opt.points,
                  "point 'a,b,...' or pair 'a,b:c,d' depending on the command (repeatable)");
  cmd->add_option("--grid", opt.grid, "grid 'lo:hi:count[,lo:hi:count...]'");
  cmd->add_option("--steps", opt.steps, "RK4 steps per unit-time integration")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", opt.tol, "shooting tolerance");
  cmd->add_option("--fd-step", opt.fd_step, "third-derivative stencil step (second = /10)");
  cmd->add_option("--out", opt.out, "output path (default stdout)");
  cmd->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--keep-going", opt.keep_going, "continue past per-row solver failures");
  cmd->add_option("--config", opt.config, "JSON config file; flags override its values");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"potential functions for statistical manifolds"};
  app.require_subcommand(1);

  Options opt;
  CLI::App* potential = app.add_subcommand("potential", "Hamilton principal function rows");
  CLI::App* scan = app.add_subcommand("scan", "potential from one q_in over a q_fin grid");
  CLI::App* recover_cmd = app.add_subcommand("recover", "diagonal recovery report");
  CLI::App* fisher = app.add_subcommand("fisher", "Fisher-Rao tensors by quadrature");
  CLI::App* kl = app.add_subcommand("kl", "Kullback-Leibler divergence by quadrature");
  CLI::App* verify = app.add_subcommand("verify", "model self-checks against oracles");
  for (CLI::App* cmd : {potential, scan, recover_cmd, fisher, kl, verify})
    add_common(cmd, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* cmd = app.get_subcommands().front();
    overlay_config(opt, *cmd);
    if (cmd == potential) return cmd_potential(opt);
    if (cmd == scan) return cmd_scan(opt);
    if (cmd == recover_cmd) return cmd_recover(opt);
    if (cmd == fisher) return cmd_fisher(opt);
    if (cmd == kl) return cmd_kl(opt);
    if (cmd == verify) return cmd_verify(opt);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
