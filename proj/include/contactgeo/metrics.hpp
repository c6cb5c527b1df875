#pragma once

// (0,2) tensors built from the structures:
//   contact kinds   g = eta⊗eta + d eta∘(phi ⊗ 1)
//   para kinds      g = eta⊗eta - d eta∘(phi ⊗ 1)
// plus frame Gram tables, compatibility/associated residuals and pullbacks.

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "contactgeo/hamiltonian.hpp"
#include "contactgeo/phase_space.hpp"
#include "contactgeo/structures.hpp"
#include "contactgeo/tensor.hpp"

namespace contactgeo {

enum class MetricKind { ContactAcs, AlphaPi, Reflection, Composite, Lambda, LambdaBar };

constexpr std::string_view to_string(MetricKind k) {
  switch (k) {
    case MetricKind::ContactAcs:
      return "acs";
    case MetricKind::AlphaPi:
      return "alpha_pi";
    case MetricKind::Reflection:
      return "r";
    case MetricKind::Composite:
      return "s";
    case MetricKind::Lambda:
      return "lambda";
    case MetricKind::LambdaBar:
      return "lambdabar";
  }
  return "?";
}

inline std::optional<MetricKind> parse_metric_kind(std::string_view name) {
  for (auto k : {MetricKind::ContactAcs, MetricKind::AlphaPi, MetricKind::Reflection, MetricKind::Composite,
                 MetricKind::Lambda, MetricKind::LambdaBar}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

constexpr StructureKind structure_for(MetricKind k) {
  switch (k) {
    case MetricKind::ContactAcs:
      return StructureKind::AlmostContact;
    case MetricKind::AlphaPi:
      return StructureKind::Rotation;
    case MetricKind::Reflection:
      return StructureKind::Reflection;
    case MetricKind::Composite:
      return StructureKind::Composite;
    case MetricKind::Lambda:
      return StructureKind::Lambda;
    case MetricKind::LambdaBar:
      return StructureKind::LambdaBar;
  }
  return StructureKind::AlmostContact;
}

/// +1 where the construction adds d eta∘(phi⊗1), -1 where it subtracts it.
constexpr int construction_sign(MetricKind k) {
  return (k == MetricKind::ContactAcs || k == MetricKind::AlphaPi) ? 1 : -1;
}

/// +1 for g(phi X, phi Y) = g(X,Y) - eta(X)eta(Y), -1 for the para-contact form.
constexpr int compatibility_sign(MetricKind k) { return k == MetricKind::ContactAcs ? 1 : -1; }

class NotAMetricError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Metric {
  MetricKind kind;
  TensorField tensor;     // (0,2)
  TensorField structure;  // the (1,1) field it was built from
  bool is_metric;         // false for the antisymmetric alpha_pi construction
};

inline Metric metric_from_structure(const PhaseSpace& s, MetricKind kind, const LambdaFamily* lambda = nullptr) {
  const TensorField phi = build_structure(s, structure_for(kind), lambda);
  const TensorField eta = contact_form(s);
  const TensorField twist = precompose_first(d_eta(s), phi);
  const TensorField eta2 = outer(eta, eta);
  TensorField g = construction_sign(kind) > 0 ? eta2 + twist : eta2 - twist;
  return {kind, std::move(g), phi, kind != MetricKind::AlphaPi};
}

inline Metric metric_from_structure(const PhaseSpace& s, MetricKind kind, const LambdaFamily& lambda) {
  return metric_from_structure(s, kind, &lambda);
}

/// Columns are xi, Q_1..Q_n, P^1..P^n evaluated at the point.
inline Eigen::MatrixXd frame_matrix(const PhaseSpace& s, const PhasePoint& x) {
  const Bindings b = s.bindings(x);
  const auto list = frame(s).as_list();
  const auto d = static_cast<Eigen::Index>(s.dim());
  Eigen::MatrixXd f(d, d);
  for (Eigen::Index k = 0; k < d; ++k) f.col(k) = list[static_cast<std::size_t>(k)].evaluate(b).col(0);
  return f;
}

/// Gram matrix of the frame (xi, Q, P) under the metric.
inline Eigen::MatrixXd frame_gram(const PhaseSpace& s, const Metric& g, const PhasePoint& x) {
  if (!g.is_metric) throw NotAMetricError(std::string(to_string(g.kind)) + " is not a metric");
  const Eigen::MatrixXd f = frame_matrix(s, x);
  return f.transpose() * g.tensor.evaluate(s.bindings(x)) * f;
}

/// |g(phi X, phi Y) - sign (g(X,Y) - eta(X) eta(Y))|
inline double compatibility_residual(const PhaseSpace& s, const TensorField& g, const TensorField& phi, int sign,
                                     const Eigen::VectorXd& xv, const Eigen::VectorXd& yv, const PhasePoint& x) {
  const Bindings b = s.bindings(x);
  const Eigen::MatrixXd gm = g.evaluate(b);
  const Eigen::MatrixXd pm = phi.evaluate(b);
  const Eigen::VectorXd eta = contact_form(s).evaluate(b).col(0);
  const double lhs = (pm * xv).dot(gm * (pm * yv));
  const double rhs = sign * (xv.dot(gm * yv) - eta.dot(xv) * eta.dot(yv));
  return std::abs(lhs - rhs);
}

/// |g(X, phi Y) - d eta(X, Y)|
inline double associated_residual(const PhaseSpace& s, const TensorField& g, const TensorField& phi,
                                  const Eigen::VectorXd& xv, const Eigen::VectorXd& yv, const PhasePoint& x) {
  const Bindings b = s.bindings(x);
  const Eigen::MatrixXd gm = g.evaluate(b);
  const Eigen::MatrixXd pm = phi.evaluate(b);
  const Eigen::MatrixXd de = d_eta(s).evaluate(b);
  return std::abs(xv.dot(gm * (pm * yv)) - xv.dot(de * yv));
}

/// Pullback of a covariant field under a point map: J^T T(map(x)) J for
/// (0,2), J^T w(map(x)) for (0,1).
inline Eigen::MatrixXd pullback(const PointMap& map, const TensorField& t, const PhasePoint& x) {
  const PhaseSpace& s = map.space();
  const Eigen::MatrixXd j = map.jacobian(x);
  const Eigen::MatrixXd at_image = t.evaluate(s.bindings(map(x)));
  if (t.valence() == Valence::Bilinear) return j.transpose() * at_image * j;
  if (t.valence() == Valence::Covector) return j.transpose() * at_image;
  throw std::invalid_argument("pullback needs a covariant field");
}

}  // namespace contactgeo
