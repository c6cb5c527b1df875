#pragma once

// Contact Hamiltonian vector fields, the rotation (Legendre) and scaling
// generators, their closed-form flows, and a fixed-step RK4 integrator.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "contactgeo/lie.hpp"
#include "contactgeo/phase_space.hpp"

namespace contactgeo {

/// Sorted, distinct, 1-based conjugate-pair indices drawn from {1..n}.
class IndexSubset {
 public:
  IndexSubset(std::vector<int> indices, int n) : indices_(std::move(indices)), n_(n) {
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
      throw std::invalid_argument("index subset has repeated indices");
    }
    for (int a : indices_) {
      if (a < 1 || a > n) throw std::out_of_range("index " + std::to_string(a) + " outside 1.." + std::to_string(n));
    }
  }

  /// {1..m}
  static IndexSubset first(int m, int n) {
    if (m < 0 || m > n) throw std::out_of_range("m must lie in 0..n");
    std::vector<int> idx(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
    return {idx, n};
  }

  static std::vector<IndexSubset> all_nonempty(int n) {
    std::vector<IndexSubset> out;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> idx;
      for (int a = 1; a <= n; ++a)
        if (mask & (1u << (a - 1))) idx.push_back(a);
      out.emplace_back(idx, n);
    }
    return out;
  }

  [[nodiscard]] const std::vector<int>& indices() const { return indices_; }
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] bool empty() const { return indices_.empty(); }
  [[nodiscard]] bool contains(int a) const { return std::binary_search(indices_.begin(), indices_.end(), a); }

 private:
  std::vector<int> indices_;
  int n_;
};

inline std::string to_string(const IndexSubset& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.indices().size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.indices()[i]);
  }
  return out + "}";
}

struct ContactHamiltonian {
  Expr h;
  std::string label;
};

/// h_L = 1/2 sum_{i in I} (q_i^2 + p_i^2): generator of rotations in the selected contact planes.
inline ContactHamiltonian legendre_generator(const PhaseSpace& s, const IndexSubset& subset) {
  Expr h;
  for (int i : subset.indices()) h += pow(s.q(i), 2) + pow(s.p(i), 2);
  return {0.5 * h, "hL" + to_string(subset)};
}

inline ContactHamiltonian legendre_generator(const PhaseSpace& s, int m) {
  return legendre_generator(s, IndexSubset::first(m, s.n()));
}

/// h_S = sum_a q^a p_a: generator of the polarization scalings.
inline ContactHamiltonian scaling_generator(const PhaseSpace& s) {
  Expr h;
  for (int a = 1; a <= s.n(); ++a) h += s.q(a) * s.p(a);
  return {h, "hS"};
}

/// X_h with  q' = -dh/dp,  p' = dh/dq + p dh/dw,  w' = h - sum p dh/dp.
inline TensorField hamiltonian_vector_field(const PhaseSpace& s, const Expr& h) {
  TensorField x(Valence::Vector, s.dim());
  const Expr dh_dw = differentiate(h, "w");
  Expr xw = h;
  for (int a = 1; a <= s.n(); ++a) {
    const Expr dh_dp = differentiate(h, s.coordinate_name(s.p_index(a)));
    const Expr dh_dq = differentiate(h, s.coordinate_name(s.q_index(a)));
    x[s.q_index(a)] = -dh_dp;
    x[s.p_index(a)] = dh_dq + s.p(a) * dh_dw;
    xw -= s.p(a) * dh_dp;
  }
  x[PhaseSpace::w_index()] = xw;
  return x;
}

inline TensorField hamiltonian_vector_field(const PhaseSpace& s, const ContactHamiltonian& h) {
  return hamiltonian_vector_field(s, h.h);
}

namespace detail {
inline void require_nonempty(const IndexSubset& subset, int n) {
  if (subset.empty()) throw std::invalid_argument("partial maps need a non-empty index subset");
  if (subset.n() != n) throw std::invalid_argument("index subset built for a different n");
}
}  // namespace detail

/// Closed-form flow of X_{h_L} for time t, rotating the pairs in `subset`.
inline PhasePoint rotation_flow(double t, const IndexSubset& subset, const PhasePoint& x) {
  const int n = static_cast<int>(x.q.size());
  detail::require_nonempty(subset, n);
  PhasePoint y = x;
  const double c = std::cos(t), sn = std::sin(t);
  for (int i : subset.indices()) {
    const double q0 = x.q[i - 1], p0 = x.p[i - 1];
    y.w -= 0.5 * sn * ((p0 * p0 - q0 * q0) * c + 2.0 * sn * q0 * p0);
    y.q[i - 1] = q0 * c - p0 * sn;
    y.p[i - 1] = q0 * sn + p0 * c;
  }
  return y;
}

/// Closed-form flow of X_{h_S}: q -> q e^{-t}, p -> p e^{t}.
inline PhasePoint scaling_flow(double t, const PhasePoint& x) {
  PhasePoint y = x;
  const double shrink = std::exp(-t), grow = std::exp(t);
  for (auto& v : y.q) v *= shrink;
  for (auto& v : y.p) v *= grow;
  return y;
}

/// The partial Legendre transformation on `subset`: the pi/2 rotation.
/// w -> w - sum q_i p_i,  q_i -> -p_i,  p_i -> q_i.  Exact (no trig round-off).
inline PhasePoint partial_legendre(const IndexSubset& subset, const PhasePoint& x) {
  const int n = static_cast<int>(x.q.size());
  detail::require_nonempty(subset, n);
  PhasePoint y = x;
  for (int i : subset.indices()) {
    const double q0 = x.q[i - 1], p0 = x.p[i - 1];
    y.w -= q0 * p0;
    y.q[i - 1] = -p0;
    y.p[i - 1] = q0;
  }
  return y;
}

/// A map of the phase space given by symbolic image coordinates, so its
/// Jacobian is exact.
class PointMap {
 public:
  PointMap(PhaseSpace space, std::vector<Expr> image) : space_(std::move(space)), image_(std::move(image)) {
    if (image_.size() != space_.dim()) throw std::invalid_argument("point map image has wrong size");
    jacobian_.reserve(space_.dim() * space_.dim());
    for (std::size_t i = 0; i < space_.dim(); ++i)
      for (std::size_t j = 0; j < space_.dim(); ++j)
        jacobian_.push_back(differentiate(image_[i], space_.coordinate_name(j)));
  }

  [[nodiscard]] const PhaseSpace& space() const { return space_; }
  [[nodiscard]] const std::vector<Expr>& image() const { return image_; }

  [[nodiscard]] PhasePoint operator()(const PhasePoint& x) const {
    const Bindings b = space_.bindings(x);
    Eigen::VectorXd v(static_cast<Eigen::Index>(space_.dim()));
    for (std::size_t i = 0; i < space_.dim(); ++i) v(static_cast<Eigen::Index>(i)) = evaluate(image_[i], b);
    return space_.from_vector(v);
  }

  /// J(i,j) = d image_i / d x^j.
  [[nodiscard]] Eigen::MatrixXd jacobian(const PhasePoint& x) const {
    const Bindings b = space_.bindings(x);
    const auto d = static_cast<Eigen::Index>(space_.dim());
    Eigen::MatrixXd j(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) j(r, c) = evaluate(jacobian_[static_cast<std::size_t>(r * d + c)], b);
    return j;
  }

 private:
  PhaseSpace space_;
  std::vector<Expr> image_;
  std::vector<Expr> jacobian_;
};

inline std::vector<Expr> coordinate_exprs(const PhaseSpace& s) {
  std::vector<Expr> out;
  for (const auto& name : s.coordinate_names()) out.push_back(var(name));
  return out;
}

inline PointMap partial_legendre_map(const PhaseSpace& s, const IndexSubset& subset) {
  detail::require_nonempty(subset, s.n());
  auto img = coordinate_exprs(s);
  for (int i : subset.indices()) {
    img[PhaseSpace::w_index()] -= s.q(i) * s.p(i);
    img[s.q_index(i)] = -s.p(i);
    img[s.p_index(i)] = s.q(i);
  }
  return {s, img};
}

inline PointMap scaling_map(const PhaseSpace& s, double t) {
  auto img = coordinate_exprs(s);
  for (int a = 1; a <= s.n(); ++a) {
    img[s.q_index(a)] = std::exp(-t) * s.q(a);
    img[s.p_index(a)] = std::exp(t) * s.p(a);
  }
  return {s, img};
}

inline PointMap rotation_map(const PhaseSpace& s, double t, const IndexSubset& subset) {
  detail::require_nonempty(subset, s.n());
  auto img = coordinate_exprs(s);
  const double c = std::cos(t), sn = std::sin(t);
  for (int i : subset.indices()) {
    const Expr q = s.q(i), p = s.p(i);
    img[PhaseSpace::w_index()] -= 0.5 * sn * ((p * p - q * q) * c + 2.0 * sn * q * p);
    img[s.q_index(i)] = c * q - sn * p;
    img[s.p_index(i)] = sn * q + c * p;
  }
  return {s, img};
}

class FlowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Classical fixed-step RK4 for x' = X(x) over time t.
inline PhasePoint integrate_flow(const PhaseSpace& s, const TensorField& field, const PhasePoint& x0, double t,
                                 int steps) {
  detail::require(field, Valence::Vector, "integrate_flow");
  if (steps < 1) throw std::invalid_argument("integrate_flow needs steps >= 1");
  if (t == 0.0) return x0;
  auto rhs = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    if (!v.allFinite()) throw FlowError("non-finite intermediate state");
    const Eigen::MatrixXd m = field.evaluate(s.bindings(s.from_vector(v)));
    return m.col(0);
  };
  Eigen::VectorXd v = s.to_vector(x0);
  const double h = t / steps;
  for (int k = 0; k < steps; ++k) {
    const Eigen::VectorXd k1 = rhs(v);
    const Eigen::VectorXd k2 = rhs(v + 0.5 * h * k1);
    const Eigen::VectorXd k3 = rhs(v + 0.5 * h * k2);
    const Eigen::VectorXd k4 = rhs(v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!v.allFinite()) throw FlowError("non-finite state at step " + std::to_string(k + 1));
  }
  return s.from_vector(v);
}

/// [X_{h_S}, X_{h_L}] for h_L on the first m pairs, via the Lie bracket.
inline TensorField generator_commutator(const PhaseSpace& s, int m) {
  if (m < 1 || m > s.n()) throw std::out_of_range("generator_commutator needs 1 <= m <= n");
  const TensorField xs = hamiltonian_vector_field(s, scaling_generator(s));
  const TensorField xl = hamiltonian_vector_field(s, legendre_generator(s, m));
  return lie_bracket(s, xs, xl);
}

/// sum_{i<=m} (p_i^2 - q_i^2) xi - 2 (p_i Q_i + q_i P^i), assembled from the frame.
inline TensorField commutator_closed_form(const PhaseSpace& s, int m) {
  if (m < 1 || m > s.n()) throw std::out_of_range("commutator_closed_form needs 1 <= m <= n");
  const HeisenbergFrame f = frame(s);
  TensorField out(Valence::Vector, s.dim());
  for (int i = 1; i <= m; ++i) {
    out += (s.p(i) * s.p(i) - s.q(i) * s.q(i)) * f.xi;
    out -= (2.0 * s.p(i)) * f.Q[static_cast<std::size_t>(i - 1)];
    out -= (2.0 * s.q(i)) * f.P[static_cast<std::size_t>(i - 1)];
  }
  return out;
}

}  // namespace contactgeo
