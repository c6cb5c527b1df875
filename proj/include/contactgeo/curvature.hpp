#pragma once

// Levi-Civita data at a point. Metric components are symbolic, so first and
// second partials of g are exact; Christoffel symbols, their derivatives and
// the Ricci tensor are assembled from those values at the point.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "contactgeo/lie.hpp"
#include "contactgeo/phase_space.hpp"
#include "contactgeo/tensor.hpp"

namespace contactgeo {

class SingularMetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// g, dg[e] = d_e g and ddg[e*dim+f] = d_e d_f g at a point.
struct MetricJet {
  Eigen::MatrixXd g;
  std::vector<Eigen::MatrixXd> dg;
  std::vector<Eigen::MatrixXd> ddg;
};

/// Precomputed symbolic first and second partials of a (0,2) field.
class SymbolicMetricJet {
 public:
  SymbolicMetricJet(const PhaseSpace& s, const TensorField& g) : space_(s), g_(g) {
    detail::require(g, Valence::Bilinear, "SymbolicMetricJet");
    const std::size_t d = s.dim();
    for (std::size_t e = 0; e < d; ++e) dg_.push_back(differentiate(g, s.coordinate_name(e)));
    for (std::size_t e = 0; e < d; ++e)
      for (std::size_t f = 0; f < d; ++f) {
        // d_e d_f = d_f d_e; reuse the lower triangle.
        ddg_.push_back(f < e ? ddg_[f * d + e] : differentiate(dg_[e], s.coordinate_name(f)));
      }
  }

  [[nodiscard]] MetricJet at(const PhasePoint& x, bool second_order = true) const {
    const Bindings b = space_.bindings(x);
    MetricJet jet;
    jet.g = g_.evaluate(b);
    for (const auto& t : dg_) jet.dg.push_back(t.evaluate(b));
    if (second_order) {
      const std::size_t d = space_.dim();
      jet.ddg.resize(d * d);
      for (std::size_t e = 0; e < d; ++e)
        for (std::size_t f = 0; f < d; ++f)
          jet.ddg[e * d + f] = f < e ? jet.ddg[f * d + e] : ddg_[e * d + f].evaluate(b);
    }
    return jet;
  }

  [[nodiscard]] const PhaseSpace& space() const { return space_; }

 private:
  PhaseSpace space_;
  TensorField g_;
  std::vector<TensorField> dg_;
  std::vector<TensorField> ddg_;
};

/// Gamma^c_ab at a point.
class ChristoffelArray {
 public:
  explicit ChristoffelArray(std::size_t dim) : dim_(dim), v_(dim * dim * dim, 0.0) {}
  [[nodiscard]] std::size_t dim() const { return dim_; }
  double& operator()(std::size_t c, std::size_t a, std::size_t b) { return v_[(c * dim_ + a) * dim_ + b]; }
  double operator()(std::size_t c, std::size_t a, std::size_t b) const { return v_[(c * dim_ + a) * dim_ + b]; }

  /// max |Gamma^c_ab - Gamma^c_ba|
  [[nodiscard]] double lower_symmetry_residual() const {
    double worst = 0.0;
    for (std::size_t c = 0; c < dim_; ++c)
      for (std::size_t a = 0; a < dim_; ++a)
        for (std::size_t b = 0; b < dim_; ++b) worst = std::max(worst, std::abs((*this)(c, a, b) - (*this)(c, b, a)));
    return worst;
  }

 private:
  std::size_t dim_;
  std::vector<double> v_;
};

namespace detail {

inline Eigen::MatrixXd checked_inverse(const Eigen::MatrixXd& g) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
  if (!lu.isInvertible()) throw SingularMetricError("metric is singular at the point");
  return lu.inverse();
}

inline ChristoffelArray christoffel_from_jet(const MetricJet& jet, const Eigen::MatrixXd& ginv) {
  const auto d = static_cast<std::size_t>(jet.g.rows());
  ChristoffelArray first(d);  // Gamma_{k a b}
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        first(k, a, b) = 0.5 * (jet.dg[a](k, b) + jet.dg[b](k, a) - jet.dg[k](a, b));
  ChristoffelArray out(d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        double acc = 0.0;
        for (std::size_t k = 0; k < d; ++k) acc += ginv(c, k) * first(k, a, b);
        out(c, a, b) = acc;
      }
  return out;
}

// R_ab = d_c G^c_ab - d_a G^c_cb + G^c_cd G^d_ab - G^c_ad G^d_cb
inline Eigen::MatrixXd ricci_from_jet(const MetricJet& jet) {
  const auto d = static_cast<std::size_t>(jet.g.rows());
  const Eigen::MatrixXd ginv = checked_inverse(jet.g);
  const ChristoffelArray gamma = christoffel_from_jet(jet, ginv);

  // dgamma[e](c,a,b) = d_e Gamma^c_ab
  std::vector<ChristoffelArray> dgamma(d, ChristoffelArray(d));
  for (std::size_t e = 0; e < d; ++e) {
    const Eigen::MatrixXd dginv = -ginv * jet.dg[e] * ginv;
    ChristoffelArray dfirst(d);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
          dfirst(k, a, b) = 0.5 * (jet.ddg[e * d + a](k, b) + jet.ddg[e * d + b](k, a) - jet.ddg[e * d + k](a, b));
        }
    ChristoffelArray first(d);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          first(k, a, b) = 0.5 * (jet.dg[a](k, b) + jet.dg[b](k, a) - jet.dg[k](a, b));
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
          double acc = 0.0;
          for (std::size_t k = 0; k < d; ++k) acc += dginv(c, k) * first(k, a, b) + ginv(c, k) * dfirst(k, a, b);
          dgamma[e](c, a, b) = acc;
        }
  }

  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      double acc = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        acc += dgamma[c](c, a, b) - dgamma[a](c, c, b);
        for (std::size_t k = 0; k < d; ++k) acc += gamma(c, c, k) * gamma(k, a, b) - gamma(c, a, k) * gamma(k, c, b);
      }
      ric(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  return ric;
}

}  // namespace detail

inline ChristoffelArray christoffel(const SymbolicMetricJet& jet, const PhasePoint& x) {
  const MetricJet j = jet.at(x, false);
  return detail::christoffel_from_jet(j, detail::checked_inverse(j.g));
}

inline ChristoffelArray christoffel(const PhaseSpace& s, const TensorField& g, const PhasePoint& x) {
  return christoffel(SymbolicMetricJet(s, g), x);
}

inline Eigen::MatrixXd ricci_matrix(const SymbolicMetricJet& jet, const PhasePoint& x) {
  return detail::ricci_from_jet(jet.at(x));
}

inline Eigen::MatrixXd ricci_matrix(const PhaseSpace& s, const TensorField& g, const PhasePoint& x) {
  return ricci_matrix(SymbolicMetricJet(s, g), x);
}

/// Black-box metric given as a function of the coordinate vector.
using MetricFunction = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// Ricci tensor from central finite differences of a black-box metric.
/// Expect agreement with the exact pipeline only to about 1e-4.
inline Eigen::MatrixXd ricci_matrix_fd(const MetricFunction& metric, const Eigen::VectorXd& x, double h = 1e-4) {
  const auto d = static_cast<std::size_t>(x.size());
  MetricJet jet;
  jet.g = metric(x);
  auto shifted = [&](std::size_t i, double di, std::size_t j, double dj) {
    Eigen::VectorXd y = x;
    y(static_cast<Eigen::Index>(i)) += di;
    y(static_cast<Eigen::Index>(j)) += dj;
    return metric(y);
  };
  for (std::size_t e = 0; e < d; ++e) jet.dg.push_back((shifted(e, h, e, 0.0) - shifted(e, -h, e, 0.0)) / (2.0 * h));
  jet.ddg.resize(d * d);
  for (std::size_t e = 0; e < d; ++e)
    for (std::size_t f = 0; f < d; ++f) {
      if (f < e) {
        jet.ddg[e * d + f] = jet.ddg[f * d + e];
      } else if (e == f) {
        jet.ddg[e * d + f] = (shifted(e, h, e, 0.0) - 2.0 * jet.g + shifted(e, -h, e, 0.0)) / (h * h);
      } else {
        jet.ddg[e * d + f] =
            (shifted(e, h, f, h) - shifted(e, h, f, -h) - shifted(e, -h, f, h) + shifted(e, -h, f, -h)) / (4.0 * h * h);
      }
    }
  return detail::ricci_from_jet(jet);
}

struct CurvatureReport {
  Eigen::MatrixXd ricci;
  double symmetry_residual = 0.0;  // max |Ric - Ric^T|
  double lambda = 0.0;             // Ric ≈ lambda eta⊗eta + nu g
  double nu = 0.0;
  bool fitted = false;             // true when (lambda, nu) came from least squares
  double einstein_residual = 0.0;  // max |Ric - lambda eta⊗eta - nu g|
};

/// Ricci tensor plus the eta-Einstein residual. With `constants` the residual
/// is measured against them; otherwise (lambda, nu) are least-squares fitted.
inline CurvatureReport ricci(const SymbolicMetricJet& jet, const PhasePoint& x,
                             std::optional<std::pair<double, double>> constants = std::nullopt) {
  const PhaseSpace& s = jet.space();
  const MetricJet j = jet.at(x);
  CurvatureReport rep;
  rep.ricci = detail::ricci_from_jet(j);
  rep.symmetry_residual = (rep.ricci - rep.ricci.transpose()).cwiseAbs().maxCoeff();
  const Eigen::VectorXd eta = contact_form(s).evaluate(s.bindings(x)).col(0);
  const Eigen::MatrixXd ee = eta * eta.transpose();
  if (constants) {
    rep.lambda = constants->first;
    rep.nu = constants->second;
  } else {
    const Eigen::Index m = ee.size();
    Eigen::MatrixXd a(m, 2);
    a.col(0) = Eigen::Map<const Eigen::VectorXd>(ee.data(), m);
    a.col(1) = Eigen::Map<const Eigen::VectorXd>(j.g.data(), m);
    const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(rep.ricci.data(), m);
    const Eigen::Vector2d sol = a.colPivHouseholderQr().solve(rhs);
    rep.lambda = sol(0);
    rep.nu = sol(1);
    rep.fitted = true;
  }
  rep.einstein_residual = (rep.ricci - rep.lambda * ee - rep.nu * j.g).cwiseAbs().maxCoeff();
  return rep;
}

inline CurvatureReport ricci(const PhaseSpace& s, const TensorField& g, const PhasePoint& x,
                             std::optional<std::pair<double, double>> constants = std::nullopt) {
  return ricci(SymbolicMetricJet(s, g), x, constants);
}

/// (nabla xi)^c_b = nabla_b xi^c = Gamma^c_{b w}, since xi = d/dw is constant.
inline Eigen::MatrixXd nabla_reeb(const SymbolicMetricJet& jet, const PhasePoint& x) {
  const ChristoffelArray gamma = christoffel(jet, x);
  const auto d = static_cast<Eigen::Index>(gamma.dim());
  Eigen::MatrixXd out(d, d);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index b = 0; b < d; ++b)
      out(c, b) = gamma(static_cast<std::size_t>(c), static_cast<std::size_t>(b), PhaseSpace::w_index());
  return out;
}

inline Eigen::MatrixXd nabla_reeb(const PhaseSpace& s, const TensorField& g, const PhasePoint& x) {
  return nabla_reeb(SymbolicMetricJet(s, g), x);
}

/// max |nabla_e g_ab|; zero for the Levi-Civita connection.
inline double metric_compatibility_residual(const SymbolicMetricJet& jet, const PhasePoint& x) {
  const MetricJet j = jet.at(x, false);
  const ChristoffelArray gamma = detail::christoffel_from_jet(j, detail::checked_inverse(j.g));
  const auto d = gamma.dim();
  double worst = 0.0;
  for (std::size_t e = 0; e < d; ++e)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        double v = j.dg[e](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        for (std::size_t k = 0; k < d; ++k) {
          v -= gamma(k, e, a) * j.g(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(b));
          v -= gamma(k, e, b) * j.g(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k));
        }
        worst = std::max(worst, std::abs(v));
      }
  return worst;
}

/// kappa = 1/2 Lie_xi phi.
inline TensorField kappa(const PhaseSpace& s, const TensorField& phi) {
  return Expr::constant(0.5) * lie_derivative(s, phi, reeb(s));
}

/// max |(Lie_X g)_ab| at the point.
inline double killing_residual(const PhaseSpace& s, const TensorField& g, const TensorField& x, const PhasePoint& at) {
  return lie_derivative(s, g, x).evaluate(s.bindings(at)).cwiseAbs().maxCoeff();
}

}  // namespace contactgeo
