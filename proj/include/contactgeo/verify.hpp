#pragma once

// Verification suites. Each check samples points, measures a max residual and
// compares it with a pinned tolerance. Module errors become failed checks.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "contactgeo/config.hpp"
#include "contactgeo/curvature.hpp"
#include "contactgeo/equilibrium.hpp"
#include "contactgeo/hamiltonian.hpp"
#include "contactgeo/io.hpp"
#include "contactgeo/lie.hpp"
#include "contactgeo/metrics.hpp"
#include "contactgeo/phase_space.hpp"
#include "contactgeo/sampling.hpp"
#include "contactgeo/structures.hpp"

namespace contactgeo {

struct CheckRecord {
  std::string check;
  std::string identity;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool expect_above = false;  // negative control: passes when the residual exceeds the tolerance
  bool pass = false;
  std::size_t points = 0;
  std::string error;
  double seconds = 0.0;
  Json extra;
};

inline Json to_json(const CheckRecord& r, bool timing) {
  Json j{{"check", r.check},
         {"identity", r.identity},
         {"max_residual", r.max_residual},
         {"tolerance", r.tolerance},
         {"comparison", r.expect_above ? ">" : "<="},
         {"pass", r.pass},
         {"points", r.points}};
  if (!r.error.empty()) j["error"] = r.error;
  if (!r.extra.is_null()) j["extra"] = r.extra;
  if (timing) j["wall_seconds"] = r.seconds;
  return j;
}

struct Report {
  std::vector<CheckRecord> records;

  [[nodiscard]] std::size_t failures() const {
    std::size_t f = 0;
    for (const auto& r : records) f += r.pass ? 0 : 1;
    return f;
  }
  [[nodiscard]] bool all_pass() const { return failures() == 0; }

  [[nodiscard]] Json summary() const {
    return Json{{"summary", true},
                {"checks", records.size()},
                {"passed", records.size() - failures()},
                {"failed", failures()}};
  }

  /// JSON lines: one record per check, then the summary.
  [[nodiscard]] std::string to_json_lines(bool timing = false) const {
    std::string out;
    for (const auto& r : records) out += dump_json(to_json(r, timing)) + "\n";
    out += dump_json(summary()) + "\n";
    return out;
  }
};

struct CheckResult {
  double residual = 0.0;
  std::size_t points = 0;
  Json extra;
};

class SuiteRunner {
 public:
  explicit SuiteRunner(Report& report) : report_(report) {}

  void check(std::string id, std::string identity, double tolerance, const std::function<CheckResult()>& body,
             bool expect_above = false) {
    CheckRecord r;
    r.check = std::move(id);
    r.identity = std::move(identity);
    r.tolerance = tolerance;
    r.expect_above = expect_above;
    const auto start = std::chrono::steady_clock::now();
    try {
      CheckResult res = body();
      r.max_residual = res.residual;
      r.points = res.points;
      r.extra = std::move(res.extra);
      const bool finite = std::isfinite(res.residual);
      r.pass = finite && (expect_above ? res.residual > tolerance : res.residual <= tolerance);
    } catch (const std::exception& e) {
      r.error = e.what();
      r.max_residual = std::numeric_limits<double>::quiet_NaN();
      r.pass = false;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report_.records.push_back(std::move(r));
  }

 private:
  Report& report_;
};

namespace detail {

// Stable per-suite seed so suites do not share random streams.
inline std::uint64_t suite_seed(std::uint64_t seed, std::string_view suite) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : suite) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
  return seed ^ h;
}

inline double max_over(const std::vector<PhasePoint>& pts, const std::function<double(const PhasePoint&)>& f) {
  double worst = 0.0;
  for (const auto& x : pts) worst = std::max(worst, f(x));
  return worst;
}

inline double max_over(const PhaseSpace& s, const std::vector<TensorField>& residuals,
                       const std::vector<PhasePoint>& pts) {
  double worst = 0.0;
  for (const auto& t : residuals) worst = std::max(worst, max_abs_residual(t, s, pts));
  return worst;
}

inline TensorField sym(const TensorField& a, const TensorField& b) { return outer(a, b) + outer(b, a); }

inline PhasePoint reference_point(int n) {
  PhasePoint x{1.0, std::vector<double>(static_cast<std::size_t>(n), 2.0),
               std::vector<double>(static_cast<std::size_t>(n), 3.0)};
  return x;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline void suite_heisenberg(const RunConfig& cfg, SuiteRunner& run) {
  const PhaseSpace s(cfg.n);
  Sampler sampler(detail::suite_seed(cfg.seed, "heisenberg"));
  const auto pts = sampler.points(s, cfg.points);
  const HeisenbergFrame f = frame(s);
  const std::size_t np = pts.size();

  run.check("heisenberg.PQ", "[P^a, Q_b] = delta^a_b xi", 1e-12, [&] {
    std::vector<TensorField> res;
    for (int a = 1; a <= s.n(); ++a)
      for (int b = 1; b <= s.n(); ++b) {
        TensorField r = lie_bracket(s, f.P[static_cast<std::size_t>(a - 1)], f.Q[static_cast<std::size_t>(b - 1)]);
        if (a == b) r -= f.xi;
        res.push_back(r);
      }
    return CheckResult{detail::max_over(s, res, pts), np, {}};
  });
  run.check("heisenberg.commuting", "[Q_a, Q_b] = [P^a, P^b] = [xi, Q_a] = [xi, P^a] = 0", 1e-12, [&] {
    std::vector<TensorField> res;
    for (std::size_t a = 0; a < f.Q.size(); ++a) {
      res.push_back(lie_bracket(s, f.xi, f.Q[a]));
      res.push_back(lie_bracket(s, f.xi, f.P[a]));
      for (std::size_t b = 0; b < f.Q.size(); ++b) {
        res.push_back(lie_bracket(s, f.Q[a], f.Q[b]));
        res.push_back(lie_bracket(s, f.P[a], f.P[b]));
      }
    }
    return CheckResult{detail::max_over(s, res, pts), np, {}};
  });
  run.check("reeb.normalized", "eta(xi) = 1", 1e-12, [&] {
    const Expr r = contract(contact_form(s), reeb(s)) - Expr::constant(1.0);
    return CheckResult{detail::max_over(pts, [&](const PhasePoint& x) { return std::abs(evaluate(r, s.bindings(x))); }),
                       np, {}};
  });
  run.check("reeb.kernel", "d eta(xi, .) = 0", 1e-12, [&] {
    TensorField iota(Valence::Covector, s.dim());
    const TensorField de = d_eta(s);
    const TensorField xi = reeb(s);
    for (std::size_t b = 0; b < s.dim(); ++b) {
      Expr acc;
      for (std::size_t a = 0; a < s.dim(); ++a) acc += xi[a] * de(a, b);
      iota[b] = acc;
    }
    return CheckResult{detail::max_over(s, {iota}, pts), np, {}};
  });
  run.check("frame.horizontal", "eta(Q_a) = eta(P^a) = 0", 1e-12, [&] {
    double worst = 0.0;
    const TensorField eta = contact_form(s);
    for (std::size_t a = 0; a < f.Q.size(); ++a) {
      const Expr rq = contract(eta, f.Q[a]);
      const Expr rp = contract(eta, f.P[a]);
      for (const auto& x : pts) {
        const Bindings b = s.bindings(x);
        worst = std::max({worst, std::abs(evaluate(rq, b)), std::abs(evaluate(rp, b))});
      }
    }
    return CheckResult{worst, np, {}};
  });
  run.check("frame.flat", "flat(Q_a) = 1/2 dp_a, flat(P^a) = -1/2 dq^a, flat(xi) = eta", 1e-12, [&] {
    std::vector<TensorField> res;
    res.push_back(flat(s, f.xi) - contact_form(s));
    for (int a = 1; a <= s.n(); ++a) {
      const auto i = static_cast<std::size_t>(a - 1);
      res.push_back(flat(s, f.Q[i]) - Expr::constant(0.5) * s.dp(a));
      res.push_back(flat(s, f.P[i]) + Expr::constant(0.5) * s.dq(a));
    }
    return CheckResult{detail::max_over(s, res, pts), np, {}};
  });
}

inline void suite_hamiltonian(const RunConfig& cfg, SuiteRunner& run) {
  const PhaseSpace s(cfg.n);
  Sampler sampler(detail::suite_seed(cfg.seed, "hamiltonian"));
  const auto pts = sampler.points(s, cfg.points);
  const std::size_t np = pts.size();
  std::vector<Expr> hams;
  for (int k = 0; k < 20; ++k) hams.push_back(sampler.polynomial(s));
  const TensorField eta = contact_form(s);
  const TensorField xi = reeb(s);

  run.check("hamiltonian.eta_of_field", "eta(X_h) = h for 20 random polynomial h", 1e-12, [&] {
    double worst = 0.0;
    for (const auto& h : hams) {
      const Expr r = contract(eta, hamiltonian_vector_field(s, h)) - h;
      for (const auto& x : pts) worst = std::max(worst, std::abs(evaluate(r, s.bindings(x))));
    }
    return CheckResult{worst, np * hams.size(), {}};
  });
  run.check("hamiltonian.lie_eta", "Lie_{X_h} eta = xi(h) eta for 20 random polynomial h", 1e-12, [&] {
    std::vector<TensorField> res;
    for (const auto& h : hams) {
      res.push_back(lie_derivative(s, eta, hamiltonian_vector_field(s, h)) - directional_derivative(s, xi, h) * eta);
    }
    return CheckResult{detail::max_over(s, res, pts), np * hams.size(), {}};
  });

  const IndexSubset subset = cfg.index_subset();
  const TensorField xl = hamiltonian_vector_field(s, legendre_generator(s, subset));
  const TensorField xs = hamiltonian_vector_field(s, scaling_generator(s));
  const HeisenbergFrame f = frame(s);
  run.check("hamiltonian.hL_frame", "Lie_{X_hL}: Q_i -> -P^i, P^i -> Q_i on the rotated pairs, 0 elsewhere; xi -> 0",
            1e-12, [&] {
              std::vector<TensorField> res{lie_derivative(s, xi, xl)};
              for (int a = 1; a <= s.n(); ++a) {
                const auto i = static_cast<std::size_t>(a - 1);
                TensorField lq = lie_derivative(s, f.Q[i], xl);
                TensorField lp = lie_derivative(s, f.P[i], xl);
                if (subset.contains(a)) {
                  lq += f.P[i];
                  lp -= f.Q[i];
                }
                res.push_back(lq);
                res.push_back(lp);
              }
              return CheckResult{detail::max_over(s, res, pts), np, {}};
            });
  run.check("hamiltonian.hL_coframe", "Lie_{X_hL}: dq^i -> -dp_i, dp_i -> dq^i on the rotated pairs, 0 elsewhere",
            1e-12, [&] {
              std::vector<TensorField> res;
              for (int a = 1; a <= s.n(); ++a) {
                TensorField lq = lie_derivative(s, s.dq(a), xl);
                TensorField lp = lie_derivative(s, s.dp(a), xl);
                if (subset.contains(a)) {
                  lq += s.dp(a);
                  lp -= s.dq(a);
                }
                res.push_back(lq);
                res.push_back(lp);
              }
              return CheckResult{detail::max_over(s, res, pts), np, {}};
            });
  run.check("hamiltonian.hS_frame", "Lie_{X_hS}: Q -> Q, P -> -P, dq -> -dq, dp -> dp", 1e-12, [&] {
    std::vector<TensorField> res{lie_derivative(s, xi, xs)};
    for (int a = 1; a <= s.n(); ++a) {
      const auto i = static_cast<std::size_t>(a - 1);
      res.push_back(lie_derivative(s, f.Q[i], xs) - f.Q[i]);
      res.push_back(lie_derivative(s, f.P[i], xs) + f.P[i]);
      res.push_back(lie_derivative(s, s.dq(a), xs) + s.dq(a));
      res.push_back(lie_derivative(s, s.dp(a), xs) - s.dp(a));
    }
    return CheckResult{detail::max_over(s, res, pts), np, {}};
  });
}

inline void suite_flows(const RunConfig& cfg, SuiteRunner& run) {
  const PhaseSpace s(cfg.n);
  Sampler sampler(detail::suite_seed(cfg.seed, "flows"));
  const auto pts = sampler.points(s, cfg.points);
  const std::size_t np = pts.size();
  const IndexSubset subset = cfg.index_subset();
  const PhasePoint x0 = detail::reference_point(s.n());
  auto dist = [&](const PhasePoint& a, const PhasePoint& b) { return (s.to_vector(a) - s.to_vector(b)).cwiseAbs().maxCoeff(); };

  run.check("flows.rotation_rk4", "RK4 flow of X_hL for t = pi/2 (10^4 steps) = closed-form rotation", 1e-8, [&] {
    const TensorField xl = hamiltonian_vector_field(s, legendre_generator(s, subset));
    const double t = std::numbers::pi / 2;
    return CheckResult{dist(integrate_flow(s, xl, x0, t, 10000), rotation_flow(t, subset, x0)), 1, {}};
  });
  run.check("flows.scaling_rk4", "RK4 flow of X_hS for t = ln 2 (10^4 steps) = closed-form scaling", 1e-8, [&] {
    const TensorField xs = hamiltonian_vector_field(s, scaling_generator(s));
    const double t = std::log(2.0);
    return CheckResult{dist(integrate_flow(s, xs, x0, t, 10000), scaling_flow(t, x0)), 1, {}};
  });
  run.check("flows.rotation_quarter", "rotation flow at t = pi/2 = partial Legendre map", 1e-12, [&] {
    const double t = std::numbers::pi / 2;
    return CheckResult{
        detail::max_over(pts, [&](const PhasePoint& x) { return dist(rotation_flow(t, subset, x), partial_legendre(subset, x)); }),
        np, {}};
  });
  run.check("flows.rotation_group_law", "Phi_{pi/2} o Phi_{pi/2} = Phi_pi", 1e-12, [&] {
    const double t = std::numbers::pi / 2;
    return CheckResult{detail::max_over(pts,
                                        [&](const PhasePoint& x) {
                                          return dist(rotation_flow(t, subset, rotation_flow(t, subset, x)),
                                                      rotation_flow(2 * t, subset, x));
                                        }),
                       np, {}};
  });
  run.check("flows.legendre_order_four", "partial Legendre map applied four times = identity (exact at (1,2,3))", 0.0,
            [&] {
              PhasePoint y = x0;
              for (int k = 0; k < 4; ++k) y = partial_legendre(subset, y);
              return CheckResult{dist(y, x0), 1, {}};
            });
  run.check("flows.legendre_order_four_random", "partial Legendre map applied four times = identity", 1e-12, [&] {
    return CheckResult{detail::max_over(pts,
                                        [&](const PhasePoint& x) {
                                          PhasePoint y = x;
                                          for (int k = 0; k < 4; ++k) y = partial_legendre(subset, y);
                                          return dist(y, x);
                                        }),
                       np, {}};
  });
  run.check("flows.eta_preserved", "partial Legendre map, scaling and rotation pull eta back to eta", 1e-12, [&] {
    const TensorField eta = contact_form(s);
    const std::vector<PointMap> maps{partial_legendre_map(s, subset), scaling_map(s, 0.7),
                                     rotation_map(s, 0.4, subset)};
    double worst = 0.0;
    for (const auto& map : maps)
      for (const auto& x : pts) {
        const Eigen::MatrixXd back = pullback(map, eta, x);
        worst = std::max(worst, (back - eta.evaluate(s.bindings(x))).cwiseAbs().maxCoeff());
      }
    return CheckResult{worst, np, {}};
  });
}

inline void suite_commutator(const RunConfig& cfg, SuiteRunner& run) {
  const PhaseSpace s(cfg.n);
  Sampler sampler(detail::suite_seed(cfg.seed, "commutator"));
  const auto pts = sampler.points(s, cfg.points);
  run.check("commutator.closed_form",
            "[X_hS, X_hL] = sum_{i<=m} (p_i^2 - q_i^2) xi - 2 (p_i Q_i + q^i P^i)", 1e-10, [&] {
              const TensorField r = generator_commutator(s, cfg.m) - commutator_closed_form(s, cfg.m);
              return CheckResult{max_abs_residual(r, s, pts), pts.size(), {}};
            });
}

inline void suite_structures(const RunConfig& cfg, SuiteRunner& run) {
  const PhaseSpace s(cfg.n);
  Sampler sampler(detail::suite_seed(cfg.seed, "structures"));
  const auto pts = sampler.points(s, cfg.points);
  const std::size_t np = pts.size();
  const LambdaFamily lambda = cfg.lambda(s);

  for (auto kind : {StructureKind::AlmostContact, StructureKind::Rotation, StructureKind::Reflection,
                    StructureKind::Composite, StructureKind::Lambda, StructureKind::LambdaBar}) {
    std::string identity;
    switch (kind) {
      case StructureKind::AlmostContact:
        identity = "phi^2 = -1 + eta⊗xi";
        break;
      case StructureKind::Lambda:
      case StructureKind::LambdaBar:
        identity = std::string(to_string(kind)) + "^2 = 1_Lambda - eta⊗xi, phi_lambda∘phi_lambdabar = 1 - eta⊗xi";
        break;
      default:
        identity = std::string(to_string(kind)) + "^2 = 1 - eta⊗xi";
    }
    identity += ", eta∘phi = 0, phi(xi) = 0";
    run.check("structures." + std::string(to_string(kind)), identity, 1e-12, [&, kind] {
      double worst = 0.0;
      for (const auto& r : check_structure_identities(s, kind, &lambda, pts)) worst = std::max(worst, r.max_residual);
      return CheckResult{worst, np, {}};
    });
  }

  const TensorField phi = build_structure(s, StructureKind::AlmostContact);
  const TensorField phi_pi = build_structure(s, StructureKind::Rotation);
  const TensorField phi_r = build_structure(s, StructureKind::Reflection);
  const TensorField phi_s = build_structure(s, StructureKind::Composite);
  const IndexSubset subset = cfg.index_subset();
  const TensorField xl = hamiltonian_vector_field(s, legendre_generator(s, subset));
  const TensorField xs = hamiltonian_vector_field(s, scaling_generator(s));
  const HeisenbergFrame f = frame(s);

  run.check("structures.composition", "phi_s = phi_r∘phi, phi∘phi_r = -phi_s", 1e-12, [&] {
    return CheckResult{detail::max_over(s, {phi_s - compose(phi_r, phi), compose(phi, phi_r) + phi_s}, pts), np, {}};
  });
  run.check("structures.phi_symmetry", "Lie_{X_hL} phi = 0", 1e-12,
            [&] { return CheckResult{detail::max_over(s, {lie_derivative(s, phi, xl)}, pts), np, {}}; });
  run.check("structures.phi_pi_symmetry", "Lie_{X_hL} phi_pi = Lie_{X_hS} phi_pi = 0", 1e-12, [&] {
    return CheckResult{detail::max_over(s, {lie_derivative(s, phi_pi, xl), lie_derivative(s, phi_pi, xs)}, pts), np,
                       {}};
  });
  run.check("structures.phi_r_rows", "Lie_{X_hS} phi_r = 0, Lie_{X_hL} phi_r = -2 sum_i (dp⊗Q + dq⊗P)", 1e-12, [&] {
    TensorField expected(Valence::Mixed, s.dim());
    for (int i : subset.indices()) {
      const auto k = static_cast<std::size_t>(i - 1);
      expected -= Expr::constant(2.0) * (outer(f.Q[k], s.dp(i)) + outer(f.P[k], s.dq(i)));
    }
    return CheckResult{detail::max_over(s, {lie_derivative(s, phi_r, xs), lie_derivative(s, phi_r, xl) - expected}, pts),
                       np, {}};
  });
  run.check("structures.phi_s_rows", "Lie_{X_hL} Lie_{X_hS} phi_s = 0, Lie_{[X_hL, X_hS]} phi_s = 0", 1e-12, [&] {
    const TensorField nested = lie_derivative(s, lie_derivative(s, phi_s, xs), xl);
    const TensorField bracket = lie_derivative(s, phi_s, lie_bracket(s, xl, xs));
    return CheckResult{detail::max_over(s, {nested, bracket}, pts), np, {}};
  });
  run.check("structures.lambda_scaling", "sum_b (p_b dLambda/dp_b - q^b dLambda/dq^b) = 0", 1e-12, [&] {
    double worst = 0.0;
    for (const auto& x : pts)
      for (double r : lambda_scaling_residual(s, lambda, x)) worst = std::max(worst, std::abs(r));
    return CheckResult{worst, np, {}};
  });
}

inline void suite_metrics(const RunConfig& cfg, SuiteRunner& run) {
  const PhaseSpace s(cfg.n);
  Sampler sampler(detail::suite_seed(cfg.seed, "metrics"));
  const auto pts = sampler.points(s, cfg.points);
  const std::size_t np = pts.size();
  const LambdaFamily lambda = cfg.lambda(s);
  const Metric acs = metric_from_structure(s, MetricKind::ContactAcs);
  const Metric gr = metric_from_structure(s, MetricKind::Reflection);
  const Metric gs = metric_from_structure(s, MetricKind::Composite);
  const Metric gl = metric_from_structure(s, MetricKind::Lambda, lambda);
  const Metric glb = metric_from_structure(s, MetricKind::LambdaBar, lambda);
  const Metric alpha = metric_from_structure(s, MetricKind::AlphaPi);
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs;
  for (std::size_t k = 0; k < np; ++k) pairs.emplace_back(sampler.vector(s.dim()), sampler.vector(s.dim()));

  run.check("metrics.symmetric", "g(X,Y) = g(Y,X) for acs, r, s, lambda, lambdabar", 1e-12, [&] {
    double worst = 0.0;
    for (const Metric* g : {&acs, &gr, &gs, &gl, &glb})
      for (const auto& x : pts) {
        const Eigen::MatrixXd m = g->tensor.evaluate(s.bindings(x));
        worst = std::max(worst, (m - m.transpose()).cwiseAbs().maxCoeff());
      }
    return CheckResult{worst, np, {}};
  });
  run.check("metrics.nondegenerate", "min |det g| over acs, r, s, lambda, lambdabar exceeds 1e-10", 1e-10, [&] {
    double smallest = std::numeric_limits<double>::infinity();
    for (const Metric* g : {&acs, &gr, &gs, &gl, &glb})
      for (const auto& x : pts) smallest = std::min(smallest, std::abs(g->tensor.evaluate(s.bindings(x)).determinant()));
    return CheckResult{smallest, np, {}};
  }, true);
  run.check("metrics.alpha_pi_antisymmetric", "alpha_pi - eta⊗eta is antisymmetric", 1e-12, [&] {
    const TensorField eta = contact_form(s);
    const TensorField h = alpha.tensor - outer(eta, eta);
    double worst = 0.0;
    for (const auto& x : pts) {
      const Eigen::MatrixXd m = h.evaluate(s.bindings(x));
      worst = std::max(worst, (m + m.transpose()).cwiseAbs().maxCoeff());
    }
    return CheckResult{worst, np, {}};
  });
  run.check("metrics.compatible", "g(phi X, phi Y) = ±(g(X,Y) - eta(X)eta(Y)) for (acs,phi), (r,phi_r), (s,phi_s)",
            1e-12, [&] {
              double worst = 0.0;
              for (const Metric* g : {&acs, &gr, &gs})
                for (std::size_t k = 0; k < np; ++k) {
                  worst = std::max(worst, compatibility_residual(s, g->tensor, g->structure, compatibility_sign(g->kind),
                                                                 pairs[k].first, pairs[k].second, pts[k]));
                }
              return CheckResult{worst, np, {}};
            });
  run.check("metrics.associated", "g(X, phi Y) = d eta(X,Y) for (acs,phi), (r,phi_r), (s,phi_s)", 1e-12, [&] {
    double worst = 0.0;
    for (const Metric* g : {&acs, &gr, &gs})
      for (std::size_t k = 0; k < np; ++k) {
        worst = std::max(worst,
                         associated_residual(s, g->tensor, g->structure, pairs[k].first, pairs[k].second, pts[k]));
      }
    return CheckResult{worst, np, {}};
  });
  run.check("metrics.lambda_not_compatible", "(g_lambda, phi_lambda) is not compatible at generic points", 1e-2, [&] {
    double worst = 0.0;
    for (std::size_t k = 0; k < np; ++k) {
      worst = std::max(worst, compatibility_residual(s, gl.tensor, gl.structure, -1, pairs[k].first, pairs[k].second,
                                                     pts[k]));
    }
    return CheckResult{worst, np, {}};
  }, true);
  run.check("metrics.frame_gram", "Gram tables of (xi, Q, P): acs diag(1, 1/2, 1/2); r off-diagonal -1/2; s diag(1, 1/2, -1/2)",
            1e-12, [&] {
              const auto d = static_cast<Eigen::Index>(s.dim());
              const Eigen::Index n = s.n();
              Eigen::MatrixXd ea = Eigen::MatrixXd::Zero(d, d);
              Eigen::MatrixXd er = Eigen::MatrixXd::Zero(d, d);
              Eigen::MatrixXd es = Eigen::MatrixXd::Zero(d, d);
              ea(0, 0) = er(0, 0) = es(0, 0) = 1.0;
              for (Eigen::Index a = 1; a <= n; ++a) {
                ea(a, a) = ea(n + a, n + a) = 0.5;
                er(a, n + a) = er(n + a, a) = -0.5;
                es(a, a) = 0.5;
                es(n + a, n + a) = -0.5;
              }
              double worst = 0.0;
              for (const auto& x : pts) {
                worst = std::max(worst, (frame_gram(s, acs, x) - ea).cwiseAbs().maxCoeff());
                worst = std::max(worst, (frame_gram(s, gr, x) - er).cwiseAbs().maxCoeff());
                worst = std::max(worst, (frame_gram(s, gs, x) - es).cwiseAbs().maxCoeff());
              }
              return CheckResult{worst, np, {}};
            });
}

/// Expected Lie derivatives of the six (0,2) tensors along X_hL and X_hS.
struct Table1Row {
  MetricKind kind;
  TensorField along_hL;
  TensorField along_hS;
};

inline std::vector<Table1Row> table1_expected(const PhaseSpace& s, const IndexSubset& subset,
                                              const LambdaFamily& lambda) {
  const TensorField xl = hamiltonian_vector_field(s, legendre_generator(s, subset));
  const std::size_t d = s.dim();
  const TensorField zero(Valence::Bilinear, d);
  auto sq = [&](const TensorField& a) { return outer(a, a); };

  TensorField acs_hs(Valence::Bilinear, d);
  TensorField s_hs(Valence::Bilinear, d);
  for (int a = 1; a <= s.n(); ++a) {
    acs_hs += sq(s.dp(a)) - sq(s.dq(a));
    s_hs -= sq(s.dp(a)) + sq(s.dq(a));
  }
  TensorField r_hl(Valence::Bilinear, d);
  TensorField s_hl(Valence::Bilinear, d);
  for (int i : subset.indices()) {
    r_hl -= sq(s.dq(i)) - sq(s.dp(i));
    s_hl -= detail::sym(s.dq(i), s.dp(i));
  }
  auto lambda_row = [&](const LambdaFamily& fam) {
    TensorField out(Valence::Bilinear, d);
    for (int a = 1; a <= s.n(); ++a) {
      out -= (Expr::constant(0.5) * directional_derivative(s, xl, fam(a))) * detail::sym(s.dp(a), s.dq(a));
      if (subset.contains(a)) out -= fam(a) * (sq(s.dq(a)) - sq(s.dp(a)));
    }
    return out;
  };
  return {{MetricKind::ContactAcs, zero, acs_hs},   {MetricKind::AlphaPi, zero, zero},
          {MetricKind::Reflection, r_hl, zero},     {MetricKind::Composite, s_hl, s_hs},
          {MetricKind::Lambda, lambda_row(lambda), zero},
          {MetricKind::LambdaBar, lambda_row(lambda.reciprocal()), zero}};
}

inline void suite_table1(const RunConfig& cfg, SuiteRunner& run) {
  const PhaseSpace s(cfg.n);
  Sampler sampler(detail::suite_seed(cfg.seed, "table1"));
  const auto pts = sampler.points(s, cfg.points);
  const LambdaFamily lambda = cfg.lambda(s);
  const IndexSubset subset = cfg.index_subset();
  const TensorField xl = hamiltonian_vector_field(s, legendre_generator(s, subset));
  const TensorField xs = hamiltonian_vector_field(s, scaling_generator(s));

  for (const auto& row : table1_expected(s, subset, lambda)) {
    const std::string name(to_string(structure_for(row.kind)));
    run.check("table1." + name, "Lie_{X_hL} g and Lie_{X_hS} g for the tensor built from " + name, 1e-9, [&] {
      const Metric g = metric_from_structure(s, row.kind, lambda);
      const TensorField rl = lie_derivative(s, g.tensor, xl) - row.along_hL;
      const TensorField rs = lie_derivative(s, g.tensor, xs) - row.along_hS;
      return CheckResult{detail::max_over(s, {rl, rs}, pts), pts.size(), {}};
    });
  }
}

inline void suite_einstein(const RunConfig& cfg, SuiteRunner& run) {
  const PhaseSpace s(cfg.n);
  Sampler sampler(detail::suite_seed(cfg.seed, "einstein"));
  const auto pts = sampler.points(s, cfg.points);
  const std::size_t np = pts.size();
  const Metric acs = metric_from_structure(s, MetricKind::ContactAcs);
  const SymbolicMetricJet jet(s, acs.tensor);
  const double lam = 2.0 * s.n() + 2.0;

  run.check("einstein.acs", "Ric = (2n+2) eta⊗eta - 2 g for the acs metric", 1e-8, [&] {
    double worst = 0.0;
    for (const auto& x : pts) worst = std::max(worst, ricci(jet, x, std::make_pair(lam, -2.0)).einstein_residual);
    return CheckResult{worst, np, {}};
  });
  run.check("einstein.fit", "least-squares (lambda, nu) = (2n+2, -2)", 1e-8, [&] {
    double worst = 0.0;
    Json extra;
    for (const auto& x : pts) {
      const CurvatureReport rep = ricci(jet, x);
      worst = std::max({worst, std::abs(rep.lambda - lam), std::abs(rep.nu + 2.0)});
      if (extra.is_null()) extra = Json{{"lambda", rep.lambda}, {"nu", rep.nu}};
    }
    return CheckResult{worst, np, extra};
  });
  run.check("einstein.ricci_symmetric", "Ric = Ric^T", 1e-8, [&] {
    double worst = 0.0;
    for (const auto& x : pts) worst = std::max(worst, ricci(jet, x).symmetry_residual);
    return CheckResult{worst, np, {}};
  });
}

inline void suite_legendre(const RunConfig& cfg, SuiteRunner& run) {
  const PhaseSpace s(cfg.n);
  Sampler sampler(detail::suite_seed(cfg.seed, "legendre"));
  const auto pts = sampler.points(s, cfg.points);
  const std::size_t np = pts.size();
  const auto subsets = IndexSubset::all_nonempty(s.n());

  auto invariance = [&](const TensorField& g) {
    double worst = 0.0;
    for (const auto& subset : subsets) {
      const PointMap map = partial_legendre_map(s, subset);
      for (const auto& x : pts) worst = std::max(worst, (pullback(map, g, x) - g.evaluate(s.bindings(x))).cwiseAbs().maxCoeff());
    }
    return worst;
  };
  auto family_metric = [&](int k) { return metric_from_structure(s, MetricKind::Lambda, LambdaFamily::product_power(s, k)).tensor; };

  run.check("legendre.product", "[partial Legendre]* g_lambda = g_lambda, Lambda = q p, every subset", 1e-9,
            [&] { return CheckResult{invariance(family_metric(1)), np * subsets.size(), {}}; });
  run.check("legendre.product_cubed", "[partial Legendre]* g_lambda = g_lambda, Lambda = (q p)^3, every subset", 1e-9,
            [&] { return CheckResult{invariance(family_metric(3)), np * subsets.size(), {}}; });
  run.check("legendre.configured", "[partial Legendre]* g_lambda = g_lambda for the configured Lambda, every subset", 1e-9,
            [&] {
              const TensorField g = metric_from_structure(s, MetricKind::Lambda, cfg.lambda(s)).tensor;
              return CheckResult{invariance(g), np * subsets.size(), {}};
            });
  run.check("legendre.even_control", "Lambda = (q p)^2 is not Legendre invariant (residual above 1e-2)", 1e-2,
            [&] { return CheckResult{invariance(family_metric(2)), np * subsets.size(), {}}; }, true);
  run.check("legendre.g_r_control", "g_r is not Legendre invariant (residual above 1e-2)", 1e-2, [&] {
    return CheckResult{invariance(metric_from_structure(s, MetricKind::Reflection).tensor), np * subsets.size(), {}};
  }, true);
  run.check("legendre.eta_eta", "[partial Legendre]* eta⊗eta = eta⊗eta", 1e-12, [&] {
    const TensorField eta = contact_form(s);
    return CheckResult{invariance(outer(eta, eta)), np * subsets.size(), {}};
  });
  run.check("legendre.lambda_conditions", "Lambda(Phi x) = -Lambda(x) on the subset, +Lambda(x) off it, for q p and (q p)^3",
            1e-12, [&] {
              double worst = 0.0;
              for (int k : {1, 3}) {
                const LambdaFamily fam = LambdaFamily::product_power(s, k);
                for (const auto& subset : subsets)
                  for (const auto& x : pts)
                    for (double r : lambda_legendre_residual(s, fam, subset, x)) worst = std::max(worst, std::abs(r));
              }
              return CheckResult{worst, np * subsets.size(), {}};
            });
  run.check("legendre.scaling", "delta_t* g_lambda = g_lambda for Lambda = q p", 1e-9, [&] {
    const TensorField g = family_metric(1);
    const PointMap map = scaling_map(s, 0.3);
    double worst = 0.0;
    for (const auto& x : pts) worst = std::max(worst, (pullback(map, g, x) - g.evaluate(s.bindings(x))).cwiseAbs().maxCoeff());
    return CheckResult{worst, np, {}};
  });
}

inline void suite_nabla(const RunConfig& cfg, SuiteRunner& run) {
  const PhaseSpace s(cfg.n);
  Sampler sampler(detail::suite_seed(cfg.seed, "nabla"));
  const auto pts = sampler.points(s, cfg.points);
  const std::size_t np = pts.size();
  const LambdaFamily lambda = cfg.lambda(s);
  const Metric gl = metric_from_structure(s, MetricKind::Lambda, lambda);
  const Metric glb = metric_from_structure(s, MetricKind::LambdaBar, lambda);
  const SymbolicMetricJet jl(s, gl.tensor);
  const SymbolicMetricJet jlb(s, glb.tensor);
  const TensorField phi_l = build_structure(s, StructureKind::Lambda, lambda);
  const TensorField phi_lb = build_structure(s, StructureKind::LambdaBar, lambda);

  run.check("nabla.lambda", "nabla xi for g_lambda = -phi_lambdabar", 1e-9, [&] {
    return CheckResult{detail::max_over(pts,
                                        [&](const PhasePoint& x) {
                                          return (nabla_reeb(jl, x) + phi_lb.evaluate(s.bindings(x))).cwiseAbs().maxCoeff();
                                        }),
                       np, {}};
  });
  run.check("nabla.lambdabar", "nabla xi for g_lambdabar = -phi_lambda", 1e-9, [&] {
    return CheckResult{detail::max_over(pts,
                                        [&](const PhasePoint& x) {
                                          return (nabla_reeb(jlb, x) + phi_l.evaluate(s.bindings(x))).cwiseAbs().maxCoeff();
                                        }),
                       np, {}};
  });
  run.check("nabla.duality", "(nabla xi)_lambda ∘ (nabla xi)_lambdabar = 1 - eta⊗xi", 1e-9, [&] {
    const TensorField proj = horizontal_projector(s);
    return CheckResult{detail::max_over(pts,
                                        [&](const PhasePoint& x) {
                                          const Eigen::MatrixXd prod = nabla_reeb(jl, x) * nabla_reeb(jlb, x);
                                          return (prod - proj.evaluate(s.bindings(x))).cwiseAbs().maxCoeff();
                                        }),
                       np, {}};
  });
  run.check("nabla.metric_compatible", "nabla g = 0 for acs and r", 1e-8, [&] {
    const SymbolicMetricJet ja(s, metric_from_structure(s, MetricKind::ContactAcs).tensor);
    const SymbolicMetricJet jr(s, metric_from_structure(s, MetricKind::Reflection).tensor);
    return CheckResult{detail::max_over(pts,
                                        [&](const PhasePoint& x) {
                                          return std::max(metric_compatibility_residual(ja, x),
                                                          metric_compatibility_residual(jr, x));
                                        }),
                       np, {}};
  });
  run.check("nabla.killing", "Lie_xi g_lambda = 0 and Lie_xi g_acs = 0", 1e-12, [&] {
    const TensorField xi = reeb(s);
    const TensorField acs = metric_from_structure(s, MetricKind::ContactAcs).tensor;
    return CheckResult{detail::max_over(pts,
                                        [&](const PhasePoint& x) {
                                          return std::max(killing_residual(s, gl.tensor, xi, x),
                                                          killing_residual(s, acs, xi, x));
                                        }),
                       np, {}};
  });
  run.check("nabla.kappa", "kappa(phi_lambda) = 1/2 Lie_xi phi_lambda = 0", 1e-12,
            [&] { return CheckResult{detail::max_over(s, {kappa(s, phi_l)}, pts), np, {}}; });
}

inline std::vector<CatalogEntry> load_catalog(const RunConfig& cfg) {
  if (cfg.catalog_path.empty()) return builtin_catalog();
  std::ifstream in(cfg.catalog_path);
  if (!in) throw ConfigError("cannot read catalog '" + cfg.catalog_path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str());
}

inline void suite_equilibrium(const RunConfig& cfg, SuiteRunner& run) {
  Sampler sampler(detail::suite_seed(cfg.seed, "equilibrium"));
  for (const auto& entry : load_catalog(cfg)) {
    const FundamentalRelation& rel = entry.relation;
    const PhaseSpace s(rel.n());
    std::vector<std::pair<double, double>> box;
    for (const auto& iv : rel.domain) box.emplace_back(iv.lo, iv.hi);
    std::vector<std::vector<double>> ys;
    for (std::size_t k = 0; k < cfg.points; ++k) ys.push_back(sampler.in_box(box));
    const std::string id = "equilibrium." + entry.id;

    run.check(id + ".eta", "psi* eta = 0 (symbolically and at sampled points)", 1e-12, [&] {
      double worst = 0.0;
      if (rel.is_symbolic()) {
        for (const auto& c : pulled_back_eta_symbolic(rel)) {
          if (!c.is_zero()) worst = std::max(worst, 1.0);
        }
      }
      for (const auto& y : ys) worst = std::max(worst, pulled_back_eta(rel, y).cwiseAbs().maxCoeff());
      return CheckResult{worst, ys.size(), {}};
    });
    run.check(id + ".hessian_pullback", "psi* g_r = -Hess(wbar)", 1e-10, [&] {
      const Metric gr = metric_from_structure(s, MetricKind::Reflection);
      double worst = 0.0;
      for (const auto& y : ys) worst = std::max(worst, (pullback_metric_on_E(rel, gr, y) + hessian(rel, y)).cwiseAbs().maxCoeff());
      return CheckResult{worst, ys.size(), {}};
    });
    run.check(id + ".lambda_pullback", "psi* g_lambda = -1/2 (Lambda_a + Lambda_b) Hess_ab(wbar)", 1e-9, [&] {
      const LambdaFamily fam = LambdaFamily::from_template(parse(cfg.lambda_template), s);
      const Metric gl = metric_from_structure(s, MetricKind::Lambda, fam);
      double worst = 0.0;
      for (const auto& y : ys) {
        worst = std::max(worst, (pullback_metric_on_E(rel, gl, y) - lambda_hessian_prediction(rel, fam, y)).cwiseAbs().maxCoeff());
      }
      return CheckResult{worst, ys.size(), {}};
    });
    const std::size_t nroot = std::min<std::size_t>(ys.size(), 10);
    run.check(id + ".involution", "partial Legendre image of psi(E) lies on the transformed relation, every subset", 1e-8,
              [&] {
                double worst = 0.0;
                for (const auto& subset : IndexSubset::all_nonempty(rel.n()))
                  for (std::size_t k = 0; k < nroot; ++k) worst = std::max(worst, involution_check(rel, subset, ys[k]));
                return CheckResult{worst, nroot, {}};
              });
    run.check(id + ".double_transform", "transforming one coordinate twice recovers wbar (coordinate sign flipped)", 1e-8,
              [&] {
                double worst = 0.0;
                for (int i = 1; i <= rel.n(); ++i) {
                  const FundamentalRelation twice = legendre_potential(legendre_potential(rel, i), i);
                  for (std::size_t k = 0; k < nroot; ++k) {
                    std::vector<double> flipped = ys[k];
                    flipped[static_cast<std::size_t>(i - 1)] = -flipped[static_cast<std::size_t>(i - 1)];
                    worst = std::max(worst, std::abs(potential_jet(twice, flipped).value - potential_jet(rel, ys[k]).value));
                  }
                }
                return CheckResult{worst, nroot, {}};
              });
    if (entry.id == "ideal_gas" && rel.is_symbolic() && to_string(*rel.wbar) == to_string(parse("exp(S)*V^(-2/3)"))) {
      run.check(id + ".closed_form", "F(T,V) = T (1 - log T - 2/3 log V) and -dF/dT = S", 1e-8, [&] {
        const FundamentalRelation f = legendre_potential(rel, 1);
        double worst = 0.0;
        const std::size_t count = std::min<std::size_t>(ys.size(), 20);
        for (std::size_t k = 0; k < count; ++k) {
          const double sv = ys[k][0], v = ys[k][1];
          const double t = potential_jet(rel, ys[k]).gradient(0);
          const PotentialJet j = potential_jet(f, {t, v});
          const double closed = t * (1.0 - std::log(t) - 2.0 / 3.0 * std::log(v));
          worst = std::max({worst, std::abs(j.value - closed), std::abs(-j.gradient(0) - sv),
                            std::abs(-j.gradient(0) - (std::log(t) + 2.0 / 3.0 * std::log(v)))});
        }
        return CheckResult{worst, count, {}};
      });
    }
  }
}

inline const std::vector<std::pair<std::string, void (*)(const RunConfig&, SuiteRunner&)>>& suite_table() {
  static const std::vector<std::pair<std::string, void (*)(const RunConfig&, SuiteRunner&)>> table{
      {"heisenberg", suite_heisenberg}, {"hamiltonian", suite_hamiltonian}, {"flows", suite_flows},
      {"commutator", suite_commutator}, {"structures", suite_structures},   {"metrics", suite_metrics},
      {"table1", suite_table1},         {"einstein", suite_einstein},       {"legendre", suite_legendre},
      {"nabla", suite_nabla},           {"equilibrium", suite_equilibrium}};
  return table;
}

inline std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : suite_table()) out.push_back(name);
  return out;
}

/// Runs the configured suites; records come back sorted by check id.
inline Report run_suite(const RunConfig& cfg) {
  validate(cfg);
  std::vector<std::string> selected;
  for (const auto& name : cfg.suites) {
    if (name == "all") {
      selected = suite_names();
      break;
    }
    bool known = false;
    for (const auto& [n, fn] : suite_table()) known = known || n == name;
    if (!known) throw ConfigError("unknown suite '" + name + "'");
    if (std::find(selected.begin(), selected.end(), name) == selected.end()) selected.push_back(name);
  }
  Report report;
  SuiteRunner runner(report);
  for (const auto& [name, fn] : suite_table()) {
    if (std::find(selected.begin(), selected.end(), name) != selected.end()) fn(cfg, runner);
  }
  std::stable_sort(report.records.begin(), report.records.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.check < b.check; });
  return report;
}

}  // namespace contactgeo
