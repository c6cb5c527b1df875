#pragma once

// Legendre submanifolds generated by a potential w̄(y).
//
// A relation carries an orientation sign s_a per coordinate. Its embedding is
//   q^a = s_a y_a,   w = w̄(y),   p_a = s_a ∂w̄/∂y_a,
// which is Legendre for any choice of signs. Symbolic relations have s = +1.
// Transforming coordinate i replaces y_i by z = ∂w̄/∂y_i, w̄ by w̄ - y_i z and
// flips s_i, so the new embedding is the image of the old one under the
// partial Legendre map on {i}.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "contactgeo/expr.hpp"
#include "contactgeo/hamiltonian.hpp"
#include "contactgeo/keyvalue.hpp"
#include "contactgeo/metrics.hpp"
#include "contactgeo/parser.hpp"
#include "contactgeo/phase_space.hpp"
#include "contactgeo/structures.hpp"

namespace contactgeo {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NonMonotoneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RootFindError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  [[nodiscard]] bool contains(double x, double slack = 1e-12) const {
    const double pad = slack * (1.0 + std::max(std::abs(lo), std::abs(hi)));
    return x >= lo - pad && x <= hi + pad;
  }
};

using DomainBox = std::vector<Interval>;

/// Value, gradient and Hessian of a potential at one point.
struct PotentialJet {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

class Potential {
 public:
  virtual ~Potential() = default;
  [[nodiscard]] virtual PotentialJet jet(const Eigen::VectorXd& y) const = 0;
};

class SymbolicPotential final : public Potential {
 public:
  SymbolicPotential(std::vector<std::string> coords, Expr wbar) : coords_(std::move(coords)), wbar_(std::move(wbar)) {
    const std::size_t n = coords_.size();
    for (const auto& c : coords_) grad_.push_back(differentiate(wbar_, c));
    hess_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) hess_[a * n + b] = b < a ? hess_[b * n + a] : differentiate(grad_[a], coords_[b]);
  }

  [[nodiscard]] PotentialJet jet(const Eigen::VectorXd& y) const override {
    const auto n = static_cast<Eigen::Index>(coords_.size());
    Bindings b;
    for (Eigen::Index a = 0; a < n; ++a) b[coords_[static_cast<std::size_t>(a)]] = y(a);
    PotentialJet j;
    j.value = evaluate(wbar_, b);
    j.gradient.resize(n);
    j.hessian.resize(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
      j.gradient(a) = evaluate(grad_[static_cast<std::size_t>(a)], b);
      for (Eigen::Index c = 0; c < n; ++c) j.hessian(a, c) = evaluate(hess_[static_cast<std::size_t>(a * n + c)], b);
    }
    return j;
  }

  [[nodiscard]] const std::vector<Expr>& gradient_exprs() const { return grad_; }

 private:
  std::vector<std::string> coords_;
  Expr wbar_;
  std::vector<Expr> grad_;
  std::vector<Expr> hess_;
};

struct FundamentalRelation {
  std::string name;
  std::vector<std::string> coords;
  std::optional<Expr> wbar;  // absent for numerically transformed relations
  DomainBox domain;
  std::vector<int> orientation;
  std::shared_ptr<const Potential> potential;

  [[nodiscard]] int n() const { return static_cast<int>(coords.size()); }
  [[nodiscard]] bool is_symbolic() const { return wbar.has_value(); }

  static FundamentalRelation symbolic(std::string name, std::vector<std::string> coords, Expr wbar, DomainBox domain) {
    if (coords.empty()) throw std::invalid_argument("relation needs at least one coordinate");
    if (domain.size() != coords.size()) throw std::invalid_argument("domain box must match the coordinate count");
    for (const auto& iv : domain) {
      if (!(iv.lo < iv.hi)) throw std::invalid_argument("domain interval must satisfy lo < hi");
    }
    const auto free = free_variables(wbar);
    for (const auto& v : free) {
      if (std::find(coords.begin(), coords.end(), v) == coords.end()) {
        throw std::invalid_argument("wbar uses '" + v + "', which is not a coordinate");
      }
    }
    FundamentalRelation r;
    r.name = std::move(name);
    r.coords = std::move(coords);
    r.potential = std::make_shared<SymbolicPotential>(r.coords, wbar);
    r.wbar = std::move(wbar);
    r.domain = std::move(domain);
    r.orientation.assign(r.coords.size(), 1);
    return r;
  }
};

namespace detail {

inline Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline void require_in_domain(const FundamentalRelation& rel, const Eigen::VectorXd& y) {
  if (y.size() != rel.n()) throw std::invalid_argument("point has wrong number of coordinates");
  for (int a = 0; a < rel.n(); ++a) {
    const double v = y(a);
    if (!std::isfinite(v) || !rel.domain[static_cast<std::size_t>(a)].contains(v)) {
      throw DomainError(rel.name + ": " + rel.coords[static_cast<std::size_t>(a)] + " = " + format_double(v) +
                        " is outside the domain");
    }
  }
}

inline PotentialJet checked_jet(const FundamentalRelation& rel, const Eigen::VectorXd& y) {
  require_in_domain(rel, y);
  PotentialJet j;
  try {
    j = rel.potential->jet(y);
  } catch (const EvaluationError& e) {
    throw DomainError(rel.name + ": " + e.what());
  }
  if (!std::isfinite(j.value) || !j.gradient.allFinite() || !j.hessian.allFinite()) {
    throw DomainError(rel.name + ": potential is not finite at the point");
  }
  return j;
}

}  // namespace detail

inline PotentialJet potential_jet(const FundamentalRelation& rel, const std::vector<double>& y) {
  return detail::checked_jet(rel, detail::to_eigen(y));
}

/// psi(y) = (w̄(y), s y, s ∇w̄(y)).
inline PhasePoint embed(const FundamentalRelation& rel, const std::vector<double>& y) {
  const PotentialJet j = potential_jet(rel, y);
  PhasePoint x;
  x.w = j.value;
  for (int a = 0; a < rel.n(); ++a) {
    const auto i = static_cast<std::size_t>(a);
    x.q.push_back(rel.orientation[i] * y[i]);
    x.p.push_back(rel.orientation[i] * j.gradient(a));
  }
  return x;
}

/// d psi / dy, rows ordered (w, q, p).
inline Eigen::MatrixXd embedding_jacobian(const FundamentalRelation& rel, const std::vector<double>& y) {
  const PotentialJet j = potential_jet(rel, y);
  const int n = rel.n();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(2 * n + 1, n);
  jac.row(0) = j.gradient.transpose();
  for (int a = 0; a < n; ++a) {
    const double s = rel.orientation[static_cast<std::size_t>(a)];
    jac(1 + a, a) = s;
    jac.row(1 + n + a) = s * j.hessian.row(a);
  }
  return jac;
}

/// Components of psi*eta on the coordinate directions, evaluated numerically.
inline Eigen::VectorXd pulled_back_eta(const FundamentalRelation& rel, const std::vector<double>& y) {
  const PhaseSpace s(rel.n());
  const Eigen::VectorXd eta = contact_form(s).evaluate(s.bindings(embed(rel, y))).col(0);
  return embedding_jacobian(rel, y).transpose() * eta;
}

/// Symbolic psi*eta = dw̄ - sum_a p_a d(s_a y_a); every component folds to 0.
inline std::vector<Expr> pulled_back_eta_symbolic(const FundamentalRelation& rel) {
  if (!rel.is_symbolic()) throw std::invalid_argument("relation has no symbolic potential");
  std::vector<Expr> out;
  for (const auto& c : rel.coords) {
    Expr acc = differentiate(*rel.wbar, c);
    for (std::size_t a = 0; a < rel.coords.size(); ++a) {
      const Expr qa = Expr::constant(rel.orientation[a]) * var(rel.coords[a]);
      const Expr pa = Expr::constant(rel.orientation[a]) * differentiate(*rel.wbar, rel.coords[a]);
      acc = acc - pa * differentiate(qa, c);
    }
    out.push_back(acc);
  }
  return out;
}

/// Second derivatives of w̄ in the relation's own coordinates.
inline Eigen::MatrixXd hessian(const FundamentalRelation& rel, const std::vector<double>& y) {
  return potential_jet(rel, y).hessian;
}

/// J^T g(psi(y)) J.
inline Eigen::MatrixXd pullback_metric_on_E(const FundamentalRelation& rel, const TensorField& g,
                                            const std::vector<double>& y) {
  detail::require(g, Valence::Bilinear, "pullback_metric_on_E");
  const PhaseSpace s(rel.n());
  if (g.dim() != s.dim()) throw std::invalid_argument("metric dimension does not match the relation");
  const Eigen::MatrixXd jac = embedding_jacobian(rel, y);
  return jac.transpose() * g.evaluate(s.bindings(embed(rel, y))) * jac;
}

inline Eigen::MatrixXd pullback_metric_on_E(const FundamentalRelation& rel, const Metric& g,
                                            const std::vector<double>& y) {
  if (!g.is_metric) throw NotAMetricError(std::string(to_string(g.kind)) + " is not a metric");
  return pullback_metric_on_E(rel, g.tensor, y);
}

/// -1/2 (Lambda_a + Lambda_b) H_ab with Lambda taken at psi(y); equals the
/// pullback of the Lambda metric.
inline Eigen::MatrixXd lambda_hessian_prediction(const FundamentalRelation& rel, const LambdaFamily& lambda,
                                                 const std::vector<double>& y) {
  const PhaseSpace s(rel.n());
  detail::require_lambda(s, &lambda);
  const Bindings b = s.bindings(embed(rel, y));
  const Eigen::MatrixXd h = hessian(rel, y);
  Eigen::MatrixXd out(h.rows(), h.cols());
  for (Eigen::Index a = 0; a < h.rows(); ++a)
    for (Eigen::Index c = 0; c < h.cols(); ++c) {
      const double la = evaluate(lambda(static_cast<int>(a) + 1), b);
      const double lc = evaluate(lambda(static_cast<int>(c) + 1), b);
      out(a, c) = -0.5 * (la + lc) * h(a, c);
    }
  return out;
}

struct RootFindOptions {
  double tolerance = 1e-12;
  int max_iterations = 100;
  int monotonicity_samples = 32;
};

/// Potential of the relation after a Legendre transform in coordinate i,
/// evaluated by inverting z = ∂_i w̄ numerically.
class LegendrePotential final : public Potential {
 public:
  LegendrePotential(FundamentalRelation base, std::size_t index, RootFindOptions opts)
      : base_(std::move(base)), index_(index), opts_(opts) {}

  /// Solves ∂_i w̄(y with y_i = x) = y'_i for x in the base domain.
  [[nodiscard]] double conjugate_root(const Eigen::VectorXd& yprime) const {
    const auto i = static_cast<Eigen::Index>(index_);
    const Interval iv = base_.domain[index_];
    const double z = yprime(i);
    Eigen::VectorXd y = yprime;
    auto f = [&](double x, double* slope) {
      y(i) = x;
      const PotentialJet j = detail::checked_jet(base_, y);
      if (slope != nullptr) *slope = j.hessian(i, i);
      return j.gradient(i) - z;
    };
    const double scale = 1.0 + std::abs(z);
    std::vector<std::pair<double, double>> pts = bracket_candidates(iv, f);
    for (const auto& [x, fx] : pts) {
      if (std::abs(fx) <= opts_.tolerance * scale) return x;
    }
    double lo = 0.0;
    double hi = 0.0;
    double flo = 0.0;
    bool found = false;
    for (std::size_t k = 0; k + 1 < pts.size() && !found; ++k) {
      if (pts[k].second * pts[k + 1].second < 0.0) {
        lo = pts[k].first;
        flo = pts[k].second;
        hi = pts[k + 1].first;
        found = true;
      }
    }
    if (!found) {
      throw DomainError(base_.name + ": conjugate value " + format_double(z) + " is outside the range of d/d" +
                        base_.coords[index_]);
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < opts_.max_iterations; ++it) {
      double slope = 0.0;
      const double fx = f(x, &slope);
      if (std::abs(fx) <= opts_.tolerance * scale) return x;
      if ((fx < 0.0) == (flo < 0.0)) {
        lo = x;
        flo = fx;
      } else {
        hi = x;
      }
      if (hi - lo <= opts_.tolerance * (1.0 + std::abs(x))) return 0.5 * (lo + hi);
      double next = slope != 0.0 ? x - fx / slope : lo;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      x = next;
    }
    throw RootFindError(base_.name + ": conjugate inversion did not converge");
  }

  [[nodiscard]] PotentialJet jet(const Eigen::VectorXd& yprime) const override {
    const auto i = static_cast<Eigen::Index>(index_);
    const double x = conjugate_root(yprime);
    Eigen::VectorXd y = yprime;
    y(i) = x;
    const PotentialJet b = detail::checked_jet(base_, y);
    const double z = yprime(i);
    const double a = b.hessian(i, i);
    const Eigen::Index n = y.size();

    PotentialJet out;
    out.value = b.value - x * z;
    out.gradient = b.gradient;
    out.gradient(i) = -x;
    out.hessian.resize(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) {
        if (r == i && c == i) {
          out.hessian(r, c) = -1.0 / a;
        } else if (r == i) {
          out.hessian(r, c) = b.hessian(i, c) / a;
        } else if (c == i) {
          out.hessian(r, c) = b.hessian(r, i) / a;
        } else {
          out.hessian(r, c) = b.hessian(r, c) - b.hessian(r, i) * b.hessian(i, c) / a;
        }
      }
    return out;
  }

 private:
  // Evaluable (x, f(x)) pairs sorted by x. The endpoints suffice for a base
  // with a box domain; nested transforms have curved domains, so otherwise a
  // grid is scanned and each valid/invalid edge is located by bisection.
  template <class F>
  static std::vector<std::pair<double, double>> bracket_candidates(const Interval& iv, F& f) {
    auto eval = [&](double x) -> std::optional<double> {
      try {
        return f(x, nullptr);
      } catch (const DomainError&) {
        return std::nullopt;
      }
    };
    const auto flo = eval(iv.lo);
    const auto fhi = eval(iv.hi);
    if (flo && fhi) return {{iv.lo, *flo}, {iv.hi, *fhi}};

    std::vector<std::pair<double, double>> out;
    for (int count : {33, 257}) {
      std::vector<double> xs;
      std::vector<std::optional<double>> fs;
      for (int k = 0; k < count; ++k) {
        xs.push_back(iv.lo + (iv.hi - iv.lo) * static_cast<double>(k) / (count - 1));
        fs.push_back(eval(xs.back()));
        if (fs.back()) out.emplace_back(xs.back(), *fs.back());
      }
      if (out.empty()) continue;
      for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        if (fs[k].has_value() == fs[k + 1].has_value()) continue;
        double good = fs[k] ? xs[k] : xs[k + 1];
        double bad = fs[k] ? xs[k + 1] : xs[k];
        std::optional<double> fgood = fs[k] ? fs[k] : fs[k + 1];
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (good + bad);
          if (const auto fm = eval(mid)) {
            good = mid;
            fgood = fm;
          } else {
            bad = mid;
          }
        }
        out.emplace_back(good, *fgood);
      }
      break;
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  FundamentalRelation base_;
  std::size_t index_;
  RootFindOptions opts_;
};

namespace detail {

// Deterministic sample of the domain box, corners first.
inline std::vector<Eigen::VectorXd> domain_samples(const DomainBox& box, int count) {
  std::vector<Eigen::VectorXd> out;
  const auto n = static_cast<Eigen::Index>(box.size());
  const int corners = 1 << box.size();
  for (int k = 0; k < corners && static_cast<int>(out.size()) < count; ++k) {
    Eigen::VectorXd y(n);
    for (Eigen::Index a = 0; a < n; ++a) {
      const auto& iv = box[static_cast<std::size_t>(a)];
      y(a) = ((k >> a) & 1) != 0 ? iv.hi : iv.lo;
    }
    out.push_back(y);
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  while (static_cast<int>(out.size()) < count) {
    Eigen::VectorXd y(n);
    for (Eigen::Index a = 0; a < n; ++a) {
      const auto& iv = box[static_cast<std::size_t>(a)];
      y(a) = iv.lo + (iv.hi - iv.lo) * u(rng);
    }
    out.push_back(y);
  }
  return out;
}

// Grid over the box with `per_axis` points on each axis.
inline std::vector<Eigen::VectorXd> domain_grid(const DomainBox& box, int per_axis) {
  std::vector<Eigen::VectorXd> out(1, Eigen::VectorXd(static_cast<Eigen::Index>(box.size())));
  for (std::size_t a = 0; a < box.size(); ++a) {
    std::vector<Eigen::VectorXd> next;
    for (const auto& y : out)
      for (int k = 0; k < per_axis; ++k) {
        Eigen::VectorXd z = y;
        z(static_cast<Eigen::Index>(a)) = box[a].lo + (box[a].hi - box[a].lo) * static_cast<double>(k) / (per_axis - 1);
        next.push_back(z);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace detail

/// Legendre transform of `rel` in coordinate `index` (1-based). The new
/// coordinate is named d<name>. Its domain is the bounding box of the
/// conjugate range; points in the box but outside the range raise DomainError
/// when evaluated. Sample points where `rel` itself cannot be evaluated
/// (possible when `rel` is already a transform) are skipped.
inline FundamentalRelation legendre_potential(const FundamentalRelation& rel, int index, RootFindOptions opts = {}) {
  if (index < 1 || index > rel.n()) throw std::out_of_range("Legendre index out of range");
  const auto i = static_cast<std::size_t>(index - 1);
  const auto ei = static_cast<Eigen::Index>(i);
  auto try_jet = [&](const Eigen::VectorXd& y) -> std::optional<PotentialJet> {
    try {
      return detail::checked_jet(rel, y);
    } catch (const DomainError&) {
      return std::nullopt;
    }
  };

  int sign = 0;
  for (const auto& y : detail::domain_samples(rel.domain, opts.monotonicity_samples)) {
    const auto j = try_jet(y);
    if (!j) continue;
    const double a = j->hessian(ei, ei);
    const int s = a > 0.0 ? 1 : (a < 0.0 ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign)) {
      throw NonMonotoneError(rel.name + ": d/d" + rel.coords[i] + " is not monotone on the domain");
    }
    sign = s;
  }
  if (sign == 0) throw DomainError(rel.name + ": no evaluable sample points in the domain");

  double zlo = std::numeric_limits<double>::infinity();
  double zhi = -std::numeric_limits<double>::infinity();
  for (const auto& y : detail::domain_grid(rel.domain, 9)) {
    if (const auto j = try_jet(y)) {
      zlo = std::min(zlo, j->gradient(ei));
      zhi = std::max(zhi, j->gradient(ei));
    }
  }
  if (!(zlo < zhi)) throw DomainError(rel.name + ": transformed domain is empty");

  FundamentalRelation out;
  out.name = "L" + std::to_string(index) + "[" + rel.name + "]";
  out.coords = rel.coords;
  out.coords[i] = "d" + rel.coords[i];
  out.domain = rel.domain;
  out.domain[i] = {zlo, zhi};
  out.orientation = rel.orientation;
  out.orientation[i] = -out.orientation[i];
  out.potential = std::make_shared<LegendrePotential>(rel, i, opts);
  return out;
}

/// Sequential transforms over the indices of `subset`.
inline FundamentalRelation legendre_potential(const FundamentalRelation& rel, const IndexSubset& subset,
                                              RootFindOptions opts = {}) {
  if (subset.n() != rel.n()) throw std::invalid_argument("subset size does not match the relation");
  FundamentalRelation out = rel;
  for (int i : subset.indices()) out = legendre_potential(out, i, opts);
  return out;
}

/// Coordinates of a phase point in the chart of `rel`: y_a = s_a q^a.
inline std::vector<double> chart_coordinates(const FundamentalRelation& rel, const PhasePoint& x) {
  std::vector<double> y;
  for (std::size_t a = 0; a < rel.coords.size(); ++a) y.push_back(rel.orientation[a] * x.q[a]);
  return y;
}

/// max |partial_legendre(I, psi(y)) - psi'(y')| where psi' embeds the
/// transformed relation and y' is read off the image point.
inline double involution_check(const FundamentalRelation& rel, const IndexSubset& subset, const std::vector<double>& y,
                               RootFindOptions opts = {}) {
  const FundamentalRelation moved = legendre_potential(rel, subset, opts);
  const PhasePoint image = partial_legendre(subset, embed(rel, y));
  const PhasePoint direct = embed(moved, chart_coordinates(moved, image));
  double worst = std::abs(image.w - direct.w);
  for (int a = 0; a < rel.n(); ++a) {
    const auto k = static_cast<std::size_t>(a);
    worst = std::max({worst, std::abs(image.q[k] - direct.q[k]), std::abs(image.p[k] - direct.p[k])});
  }
  return worst;
}

struct CatalogEntry {
  std::string id;
  FundamentalRelation relation;
};

inline FundamentalRelation make_relation(const std::string& name, const std::vector<std::string>& coords,
                                         const std::string& wbar, const DomainBox& domain) {
  return FundamentalRelation::symbolic(name, coords, parse(wbar), domain);
}

inline std::vector<CatalogEntry> builtin_catalog() {
  std::vector<CatalogEntry> out;
  out.push_back({"quadratic", make_relation("quadratic", {"x1", "x2"}, "0.5*(x1^2 + x2^2)", {{-2, 2}, {-2, 2}})});
  out.push_back({"ideal_gas", make_relation("ideal_gas", {"S", "V"}, "exp(S)*V^(-2/3)", {{0.5, 2}, {0.5, 2}})});
  out.push_back({"van_der_waals", make_relation("van_der_waals", {"T", "V"}, "-T*log(V - 1) - 1/V - 1.5*T*log(T)",
                                                {{0.5, 2}, {2, 4}})});
  return out;
}

/// Blocks of `potential = "..."`, `coords = [...]`, `wbar = "..."`,
/// `domain = [[lo, hi], ...]`.
inline std::vector<CatalogEntry> parse_catalog(const std::string& text) {
  std::vector<CatalogEntry> out;
  for (const auto& block : parse_key_value_blocks(text)) {
    std::string name;
    std::vector<std::string> coords;
    std::string wbar;
    DomainBox domain;
    bool seen[4] = {false, false, false, false};
    const std::size_t first_line = block.front().line;
    for (const auto& kv : block) {
      try {
        if (kv.key == "potential") {
          name = kv.value.get<std::string>();
          seen[0] = true;
        } else if (kv.key == "coords") {
          coords = kv.value.get<std::vector<std::string>>();
          seen[1] = true;
        } else if (kv.key == "wbar") {
          wbar = kv.value.get<std::string>();
          seen[2] = true;
        } else if (kv.key == "domain") {
          for (const auto& pair : kv.value) {
            if (!pair.is_array() || pair.size() != 2) throw ConfigError("domain entries must be [lo, hi]", kv.line);
            domain.push_back({pair[0].get<double>(), pair[1].get<double>()});
          }
          seen[3] = true;
        } else {
          throw ConfigError("unknown catalog key '" + kv.key + "'", kv.line);
        }
      } catch (const nlohmann::json::exception&) {
        throw ConfigError("wrong value type for '" + kv.key + "'", kv.line);
      }
    }
    for (bool s : seen) {
      if (!s) throw ConfigError("catalog block needs potential, coords, wbar and domain", first_line);
    }
    try {
      out.push_back({name, make_relation(name, coords, wbar, domain)});
    } catch (const ParseError& e) {
      throw ConfigError("wbar: " + std::string(e.what()), first_line);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what(), first_line);
    }
  }
  return out;
}

}  // namespace contactgeo
