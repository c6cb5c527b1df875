// contactgeo: batch front-end for the verification suites and for one-off
// curvature, flow, pullback and table computations.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 bad configuration.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "contactgeo/contactgeo.hpp"

namespace cg = contactgeo;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct GlobalOptions {
  cg::RunConfig cfg;
  std::string json_path;
  std::string config_path;
  CLI::Option* n_opt = nullptr;
  CLI::Option* m_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* points_opt = nullptr;
  int n = 2;
  int m = 1;
  std::uint64_t seed = 0;
  std::size_t points = 50;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cg::ConfigError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Config file first, explicit flags override it.
cg::RunConfig resolve(GlobalOptions& g) {
  cg::RunConfig cfg = g.cfg;
  if (!g.config_path.empty()) {
    cg::apply_config_text(cfg, read_file(g.config_path));
    // A relative catalog path is read next to the config file.
    const std::filesystem::path catalog(cfg.catalog_path);
    if (!cfg.catalog_path.empty() && catalog.is_relative()) {
      cfg.catalog_path = (std::filesystem::path(g.config_path).parent_path() / catalog).string();
    }
  }
  if (g.n_opt->count() > 0) cfg.n = g.n;
  if (g.m_opt->count() > 0) cfg.m = g.m;
  if (g.seed_opt->count() > 0) {
    cfg.seed = g.seed;
    cfg.seed_given = true;
  }
  if (g.points_opt->count() > 0) cfg.points = g.points;
  if (cfg.m > cfg.n && g.m_opt->count() == 0) cfg.m = cfg.n;
  return cfg;
}

std::vector<double> parse_csv(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw cg::ConfigError("'" + item + "' is not a number");
    }
  }
  return out;
}

cg::PhasePoint point_from(const cg::RunConfig& cfg, const std::string& csv) {
  const cg::PhaseSpace s(cfg.n);
  if (csv.empty()) {
    cg::Sampler sampler(cfg.seed);
    return sampler.point(s);
  }
  const auto v = parse_csv(csv);
  if (v.size() != s.dim()) {
    throw cg::ConfigError("--point needs " + std::to_string(s.dim()) + " values ordered w, q1..qn, p1..pn");
  }
  return s.from_vector(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
}

void emit(const std::string& text, const std::string& json_path) {
  std::cout << text;
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw cg::ConfigError("cannot write '" + json_path + "'");
    out << text;
  }
}

cg::MetricKind metric_kind(const std::string& name) {
  const auto k = cg::parse_metric_kind(name);
  if (!k) throw cg::ConfigError("unknown metric '" + name + "'");
  return *k;
}

int run_verify(GlobalOptions& g, const std::vector<std::string>& suites, bool timing) {
  cg::RunConfig cfg = resolve(g);
  if (!suites.empty()) {
    cfg.suites.clear();
    for (const auto& s : suites) {
      std::stringstream ss(s);
      std::string item;
      while (std::getline(ss, item, ',')) cfg.suites.push_back(item);
    }
  }
  const cg::Report report = cg::run_suite(cfg);
  emit(report.to_json_lines(timing), g.json_path);
  return report.all_pass() ? 0 : kExitFail;
}

int run_curvature(GlobalOptions& g, const std::string& metric, const std::string& lambda, const std::string& point) {
  cg::RunConfig cfg = resolve(g);
  if (!metric.empty()) cfg.metric = metric;
  if (!lambda.empty()) cfg.lambda_template = lambda;
  cg::validate(cfg);
  const cg::PhaseSpace s(cfg.n);
  const cg::MetricKind kind = metric_kind(cfg.metric);
  const cg::Metric g2 = cg::metric_from_structure(s, kind, cfg.lambda(s));
  if (!g2.is_metric) throw cg::ConfigError(cfg.metric + " is not a metric");
  const cg::PhasePoint x = point_from(cfg, point);
  const cg::SymbolicMetricJet jet(s, g2.tensor);
  std::optional<std::pair<double, double>> constants;
  if (kind == cg::MetricKind::ContactAcs) constants = std::make_pair(2.0 * cfg.n + 2.0, -2.0);
  const cg::CurvatureReport rep = cg::ricci(jet, x, constants);
  cg::Json j{{"metric", cfg.metric},
             {"n", cfg.n},
             {"point", cg::to_json(x)},
             {"ricci", cg::to_json(rep.ricci)},
             {"ricci_symmetry_residual", rep.symmetry_residual},
             {"lambda", rep.lambda},
             {"nu", rep.nu},
             {"fitted", rep.fitted},
             {"einstein_residual", rep.einstein_residual},
             {"nabla_xi", cg::Json{{"valence", "(1,1)"}, {"components", cg::to_json(cg::nabla_reeb(jet, x))}}}};
  emit(cg::dump_json(j) + "\n", g.json_path);
  return 0;
}

int run_flow(GlobalOptions& g, const std::string& ham, double t, int steps, const std::string& point) {
  cg::RunConfig cfg = resolve(g);
  cg::validate(cfg);
  const cg::PhaseSpace s(cfg.n);
  const cg::IndexSubset subset = cfg.index_subset();
  const cg::PhasePoint x = point_from(cfg, point);
  cg::Expr h;
  std::optional<cg::PhasePoint> closed;
  if (ham == "hL") {
    h = cg::legendre_generator(s, subset).h;
    closed = cg::rotation_flow(t, subset, x);
  } else if (ham == "hS") {
    h = cg::scaling_generator(s).h;
    closed = cg::scaling_flow(t, x);
  } else {
    try {
      h = cg::parse(ham);
    } catch (const cg::ParseError& e) {
      throw cg::ConfigError(std::string("--hamiltonian: ") + e.what());
    }
    for (const auto& v : cg::free_variables(h)) {
      const auto& names = s.coordinate_names();
      if (std::find(names.begin(), names.end(), v) == names.end()) {
        throw cg::ConfigError("--hamiltonian uses unknown variable '" + v + "'");
      }
    }
  }
  if (steps < 1) throw cg::ConfigError("--steps must be at least 1");
  const cg::PhasePoint y = cg::integrate_flow(s, cg::hamiltonian_vector_field(s, h), x, t, steps);
  cg::Json j{{"hamiltonian", cg::to_string(h)}, {"t", t}, {"steps", steps}, {"start", cg::to_json(x)},
             {"rk4", cg::to_json(y)}};
  if (closed) {
    j["closed_form"] = cg::to_json(*closed);
    j["max_residual"] = (s.to_vector(y) - s.to_vector(*closed)).cwiseAbs().maxCoeff();
  }
  emit(cg::dump_json(j) + "\n", g.json_path);
  return 0;
}

int run_pullback(GlobalOptions& g, const std::string& map_name, double t, const std::string& metric,
                 const std::string& lambda, const std::string& point, const std::string& relation,
                 const std::string& at) {
  cg::RunConfig cfg = resolve(g);
  if (!metric.empty()) cfg.metric = metric;
  if (!lambda.empty()) cfg.lambda_template = lambda;
  if (!relation.empty()) {
    const auto catalog = cg::load_catalog(cfg);
    const auto it = std::find_if(catalog.begin(), catalog.end(), [&](const auto& e) { return e.id == relation; });
    if (it == catalog.end()) throw cg::ConfigError("unknown relation '" + relation + "'");
    const cg::FundamentalRelation& rel = it->relation;
    const cg::PhaseSpace s(rel.n());
    const auto y = parse_csv(at);
    if (y.size() != static_cast<std::size_t>(rel.n())) throw cg::ConfigError("--at needs one value per coordinate");
    const cg::LambdaFamily fam = cg::LambdaFamily::from_template(cg::parse(cfg.lambda_template), s);
    const cg::Metric gm = cg::metric_from_structure(s, metric_kind(cfg.metric), fam);
    const Eigen::MatrixXd pulled = cg::pullback_metric_on_E(rel, gm, y);
    const Eigen::MatrixXd hess = cg::hessian(rel, y);
    cg::Json j{{"relation", rel.name},   {"coords", rel.coords},
               {"at", y},                {"metric", cfg.metric},
               {"embedding", cg::to_json(cg::embed(rel, y))},
               {"pullback", cg::to_json(pulled)},
               {"hessian", cg::to_json(hess)}};
    if (gm.kind == cg::MetricKind::Reflection) j["hessian_residual"] = (pulled + hess).cwiseAbs().maxCoeff();
    emit(cg::dump_json(j) + "\n", g.json_path);
    return 0;
  }

  cg::validate(cfg);
  const cg::PhaseSpace s(cfg.n);
  const cg::IndexSubset subset = cfg.index_subset();
  const cg::Metric gm = cg::metric_from_structure(s, metric_kind(cfg.metric), cfg.lambda(s));
  const cg::PhasePoint x = point_from(cfg, point);
  std::optional<cg::PointMap> map;
  if (map_name == "legendre") {
    map = cg::partial_legendre_map(s, subset);
  } else if (map_name == "scaling") {
    map = cg::scaling_map(s, t);
  } else if (map_name == "rotation") {
    map = cg::rotation_map(s, t, subset);
  } else {
    throw cg::ConfigError("--map must be legendre, scaling or rotation");
  }
  const Eigen::MatrixXd pulled = cg::pullback(*map, gm.tensor, x);
  const Eigen::MatrixXd orig = gm.tensor.evaluate(s.bindings(x));
  cg::Json j{{"map", map_name},
             {"subset", cg::to_string(subset)},
             {"metric", cfg.metric},
             {"point", cg::to_json(x)},
             {"pullback", cg::to_json(pulled)},
             {"metric_at_point", cg::to_json(orig)},
             {"invariance_residual", (pulled - orig).cwiseAbs().maxCoeff()}};
  emit(cg::dump_json(j) + "\n", g.json_path);
  return 0;
}

int run_table(GlobalOptions& g, const std::string& metric, const std::string& lambda, const std::string& point) {
  cg::RunConfig cfg = resolve(g);
  if (!metric.empty()) cfg.metric = metric;
  if (!lambda.empty()) cfg.lambda_template = lambda;
  cg::validate(cfg);
  const cg::PhaseSpace s(cfg.n);
  const cg::MetricKind kind = metric_kind(cfg.metric);
  const cg::LambdaFamily fam = cfg.lambda(s);
  const cg::Metric gm = cg::metric_from_structure(s, kind, fam);
  const cg::IndexSubset subset = cfg.index_subset();
  const cg::PhasePoint x = point_from(cfg, point);
  const cg::Bindings b = s.bindings(x);
  const cg::TensorField xl = cg::hamiltonian_vector_field(s, cg::legendre_generator(s, subset));
  const cg::TensorField xs = cg::hamiltonian_vector_field(s, cg::scaling_generator(s));
  const cg::TensorField ll = cg::lie_derivative(s, gm.tensor, xl);
  const cg::TensorField ls = cg::lie_derivative(s, gm.tensor, xs);
  cg::Json j{{"metric", cfg.metric}, {"n", cfg.n}, {"subset", cg::to_string(subset)}, {"point", cg::to_json(x)},
             {"is_metric", gm.is_metric}, {"tensor", cg::to_json(gm.tensor, b)}, {"lie_hL", cg::to_json(ll, b)},
             {"lie_hS", cg::to_json(ls, b)}};
  for (const auto& row : cg::table1_expected(s, subset, fam)) {
    if (row.kind != kind) continue;
    j["residual_hL"] = (ll - row.along_hL).evaluate(b).cwiseAbs().maxCoeff();
    j["residual_hS"] = (ls - row.along_hS).evaluate(b).cwiseAbs().maxCoeff();
  }
  if (gm.is_metric) j["frame_gram"] = cg::to_json(cg::frame_gram(s, gm, x));
  emit(cg::dump_json(j) + "\n", g.json_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contact phase space geometry: identities, curvature, flows and pullbacks"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  g.n_opt = app.add_option("--n", g.n, "number of conjugate pairs")->check(CLI::PositiveNumber);
  g.m_opt = app.add_option("--m", g.m, "rotate the first m pairs")->check(CLI::PositiveNumber);
  g.seed_opt = app.add_option("--seed", g.seed, "sampler seed");
  g.points_opt = app.add_option("--points", g.points, "sample points per check")->check(CLI::PositiveNumber);
  app.add_option("--json", g.json_path, "also write the output to this file")->type_name("PATH");
  app.add_option("--config", g.config_path, "key = value config file")->type_name("PATH");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> suites;
  bool timing = false;
  verify->add_option("--suite", suites, "suite names (comma separated or repeated); 'all' runs every suite");
  verify->add_flag("--timing", timing, "include wall time per check (breaks byte-identical reports)");

  std::string metric, lambda, point, ham = "hL", map_name = "legendre", relation, at;
  double t = std::numbers::pi / 2;
  int steps = 10000;

  auto* curvature = app.add_subcommand("curvature", "Ricci tensor, eta-Einstein residual and nabla xi at a point");
  curvature->add_option("--metric", metric, "acs, r, s, lambda, lambdabar");
  curvature->add_option("--lambda", lambda, "Lambda template in q, p (instantiated per index)");
  curvature->add_option("--point", point, "w,q1..qn,p1..pn (sampled from --seed if omitted)");

  auto* flow = app.add_subcommand("flow", "integrate a contact Hamiltonian flow with RK4");
  flow->add_option("--hamiltonian", ham, "expression in w, q<a>, p<a>, or hL / hS");
  flow->add_option("--t", t, "flow time");
  flow->add_option("--steps", steps, "RK4 steps");
  flow->add_option("--point", point, "w,q1..qn,p1..pn");

  auto* pull = app.add_subcommand("pullback", "pull a metric back along a map or onto an equilibrium submanifold");
  pull->add_option("--map", map_name, "legendre, scaling or rotation");
  pull->add_option("--t", t, "parameter for scaling/rotation maps");
  pull->add_option("--metric", metric, "acs, alpha_pi, r, s, lambda, lambdabar");
  pull->add_option("--lambda", lambda, "Lambda template in q, p");
  pull->add_option("--point", point, "w,q1..qn,p1..pn");
  pull->add_option("--relation", relation, "catalog relation id (pull back onto its Legendre submanifold)");
  pull->add_option("--at", at, "relation coordinates, comma separated");

  auto* table = app.add_subcommand("table", "Lie derivatives along X_hL, X_hS and the frame Gram table");
  table->add_option("--metric", metric, "acs, alpha_pi, r, s, lambda, lambdabar");
  table->add_option("--lambda", lambda, "Lambda template in q, p");
  table->add_option("--point", point, "w,q1..qn,p1..pn");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (verify->parsed()) return run_verify(g, suites, timing);
    if (curvature->parsed()) return run_curvature(g, metric, lambda, point);
    if (flow->parsed()) return run_flow(g, ham, t, steps, point);
    if (pull->parsed()) return run_pullback(g, map_name, t, metric, lambda, point, relation, at);
    if (table->parsed()) return run_table(g, metric, lambda, point);
  } catch (const cg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const cg::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitConfig;
}
