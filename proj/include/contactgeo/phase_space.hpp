#pragma once

// The (2n+1)-dimensional thermodynamic phase space in Darboux coordinates
// (w, q1..qn, p1..pn) with contact form  eta = dw - sum_a p_a dq^a.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "contactgeo/expr.hpp"
#include "contactgeo/tensor.hpp"

namespace contactgeo {

struct PhasePoint {
  double w = 0.0;
  std::vector<double> q;
  std::vector<double> p;

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

class PhaseSpace {
 public:
  explicit PhaseSpace(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("phase space needs n >= 1");
    names_.reserve(dim());
    names_.emplace_back("w");
    for (int a = 1; a <= n; ++a) names_.push_back("q" + std::to_string(a));
    for (int a = 1; a <= n; ++a) names_.push_back("p" + std::to_string(a));
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(2 * n_ + 1); }

  // Conjugate-pair indices a are 1-based, as in q1..qn.
  [[nodiscard]] static constexpr std::size_t w_index() { return 0; }
  [[nodiscard]] std::size_t q_index(int a) const { return static_cast<std::size_t>(check(a)); }
  [[nodiscard]] std::size_t p_index(int a) const { return static_cast<std::size_t>(n_ + check(a)); }

  [[nodiscard]] const std::vector<std::string>& coordinate_names() const { return names_; }
  [[nodiscard]] const std::string& coordinate_name(std::size_t i) const { return names_.at(i); }

  [[nodiscard]] Expr w() const { return var("w"); }
  [[nodiscard]] Expr q(int a) const { return var(names_[q_index(a)]); }
  [[nodiscard]] Expr p(int a) const { return var(names_[p_index(a)]); }

  void validate(const PhasePoint& x) const {
    if (x.q.size() != static_cast<std::size_t>(n_) || x.p.size() != static_cast<std::size_t>(n_)) {
      throw std::invalid_argument("phase point has wrong number of coordinates");
    }
    bool finite = std::isfinite(x.w);
    for (int a = 0; a < n_; ++a) finite = finite && std::isfinite(x.q[a]) && std::isfinite(x.p[a]);
    if (!finite) throw std::invalid_argument("phase point has non-finite coordinates");
  }

  [[nodiscard]] Bindings bindings(const PhasePoint& x) const {
    validate(x);
    Bindings b;
    b.emplace("w", x.w);
    for (int a = 1; a <= n_; ++a) {
      b.emplace(names_[q_index(a)], x.q[a - 1]);
      b.emplace(names_[p_index(a)], x.p[a - 1]);
    }
    return b;
  }

  [[nodiscard]] Eigen::VectorXd to_vector(const PhasePoint& x) const {
    validate(x);
    Eigen::VectorXd v(static_cast<Eigen::Index>(dim()));
    v(0) = x.w;
    for (int a = 1; a <= n_; ++a) {
      v(static_cast<Eigen::Index>(q_index(a))) = x.q[a - 1];
      v(static_cast<Eigen::Index>(p_index(a))) = x.p[a - 1];
    }
    return v;
  }

  [[nodiscard]] PhasePoint from_vector(const Eigen::VectorXd& v) const {
    if (v.size() != static_cast<Eigen::Index>(dim())) throw std::invalid_argument("coordinate vector has wrong size");
    PhasePoint x;
    x.w = v(0);
    x.q.resize(n_);
    x.p.resize(n_);
    for (int a = 1; a <= n_; ++a) {
      x.q[a - 1] = v(static_cast<Eigen::Index>(q_index(a)));
      x.p[a - 1] = v(static_cast<Eigen::Index>(p_index(a)));
    }
    return x;
  }

  [[nodiscard]] TensorField coordinate_vector(std::size_t i) const {
    TensorField v(Valence::Vector, dim());
    v[i] = 1.0;
    return v;
  }

  [[nodiscard]] TensorField coordinate_covector(std::size_t i) const {
    TensorField v(Valence::Covector, dim());
    v[i] = 1.0;
    return v;
  }

  [[nodiscard]] TensorField dq(int a) const { return coordinate_covector(q_index(a)); }
  [[nodiscard]] TensorField dp(int a) const { return coordinate_covector(p_index(a)); }

 private:
  int check(int a) const {
    if (a < 1 || a > n_) throw std::out_of_range("conjugate-pair index out of range");
    return a;
  }

  int n_;
  std::vector<std::string> names_;
};

/// eta = dw - sum p_a dq^a.
inline TensorField contact_form(const PhaseSpace& s) {
  TensorField eta(Valence::Covector, s.dim());
  eta[PhaseSpace::w_index()] = 1.0;
  for (int a = 1; a <= s.n(); ++a) eta[s.q_index(a)] = -s.p(a);
  return eta;
}

/// The Reeb field xi = d/dw.
inline TensorField reeb(const PhaseSpace& s) { return s.coordinate_vector(PhaseSpace::w_index()); }

/// The Heisenberg frame: xi, Q_a = d/dq^a + p_a d/dw, P^a = d/dp_a.
struct HeisenbergFrame {
  TensorField xi;
  std::vector<TensorField> Q;
  std::vector<TensorField> P;

  /// xi, Q_1..Q_n, P^1..P^n.
  [[nodiscard]] std::vector<TensorField> as_list() const {
    std::vector<TensorField> out{xi};
    out.insert(out.end(), Q.begin(), Q.end());
    out.insert(out.end(), P.begin(), P.end());
    return out;
  }
};

inline HeisenbergFrame frame(const PhaseSpace& s) {
  HeisenbergFrame f{reeb(s), {}, {}};
  for (int a = 1; a <= s.n(); ++a) {
    TensorField qa = s.coordinate_vector(s.q_index(a));
    qa[PhaseSpace::w_index()] = s.p(a);
    f.Q.push_back(std::move(qa));
    f.P.push_back(s.coordinate_vector(s.p_index(a)));
  }
  return f;
}

/// d eta with the 1/2 antisymmetrization convention:
/// d eta = -1/2 sum (dp_a ⊗ dq^a - dq^a ⊗ dp_a), so d eta(Q_a, P^a) = 1/2.
inline TensorField d_eta(const PhaseSpace& s) {
  TensorField out(Valence::Bilinear, s.dim());
  for (int a = 1; a <= s.n(); ++a) {
    out(s.q_index(a), s.p_index(a)) = 0.5;
    out(s.p_index(a), s.q_index(a)) = -0.5;
  }
  return out;
}

/// The identity automorphism of the tangent bundle.
inline TensorField identity(const PhaseSpace& s) {
  TensorField out(Valence::Mixed, s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) out(i, i) = 1.0;
  return out;
}

/// eta ⊗ xi as the (1,1) map X -> eta(X) xi.
inline TensorField eta_xi(const PhaseSpace& s) { return outer(reeb(s), contact_form(s)); }

/// 1 - eta ⊗ xi: the projection onto the contact distribution along xi.
inline TensorField horizontal_projector(const PhaseSpace& s) { return identity(s) - eta_xi(s); }

/// The bundle map X -> eta(X) eta + i_X d eta.
inline TensorField flat(const PhaseSpace& s, const TensorField& x) {
  const TensorField eta = contact_form(s);
  const TensorField de = d_eta(s);
  const Expr ex = contract(eta, x);
  TensorField out = ex * eta;
  for (std::size_t b = 0; b < s.dim(); ++b) {
    Expr acc;
    for (std::size_t a = 0; a < s.dim(); ++a) acc += x[a] * de(a, b);
    out[b] += acc;
  }
  return out;
}

}  // namespace contactgeo
