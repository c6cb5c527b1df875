#pragma once

// Coordinate-component tensor fields whose components are expressions.
//
// Index conventions (dim = 2n+1, coordinate order w, q1..qn, p1..pn):
//   (1,0)  X^c              stored as comps[c]
//   (0,1)  w_b              stored as comps[b]
//   (1,1)  T^c_b            stored as comps[c*dim + b], T(X)^c = T^c_b X^b
//   (0,2)  g_ab             stored as comps[a*dim + b], g(X,Y) = g_ab X^a Y^b

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "contactgeo/expr.hpp"

namespace contactgeo {

enum class Valence { Vector, Covector, Mixed, Bilinear };

constexpr std::string_view valence_tag(Valence v) {
  switch (v) {
    case Valence::Vector:
      return "(1,0)";
    case Valence::Covector:
      return "(0,1)";
    case Valence::Mixed:
      return "(1,1)";
    case Valence::Bilinear:
      return "(0,2)";
  }
  return "?";
}

constexpr int rank_of(Valence v) { return (v == Valence::Vector || v == Valence::Covector) ? 1 : 2; }

class TensorField {
 public:
  TensorField(Valence valence, std::size_t dim)
      : valence_(valence), dim_(dim), comps_(component_count(valence, dim), Expr::constant(0.0)) {}

  TensorField(Valence valence, std::size_t dim, std::vector<Expr> comps)
      : valence_(valence), dim_(dim), comps_(std::move(comps)) {
    if (comps_.size() != component_count(valence, dim)) {
      throw std::invalid_argument("component count does not match valence and dimension");
    }
  }

  [[nodiscard]] Valence valence() const { return valence_; }
  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] int rank() const { return rank_of(valence_); }
  [[nodiscard]] const std::vector<Expr>& components() const { return comps_; }

  Expr& operator[](std::size_t i) { return comps_.at(i); }
  const Expr& operator[](std::size_t i) const { return comps_.at(i); }
  Expr& operator()(std::size_t i, std::size_t j) { return comps_.at(i * dim_ + j); }
  const Expr& operator()(std::size_t i, std::size_t j) const { return comps_.at(i * dim_ + j); }

  /// Vectors and covectors evaluate to a dim x 1 column, rank-2 fields to dim x dim.
  [[nodiscard]] Eigen::MatrixXd evaluate(const Bindings& b) const {
    const auto d = static_cast<Eigen::Index>(dim_);
    if (rank() == 1) {
      Eigen::MatrixXd out(d, 1);
      for (Eigen::Index i = 0; i < d; ++i) out(i, 0) = contactgeo::evaluate(comps_[static_cast<std::size_t>(i)], b);
      return out;
    }
    Eigen::MatrixXd out(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        out(i, j) = contactgeo::evaluate(comps_[static_cast<std::size_t>(i * d + j)], b);
      }
    }
    return out;
  }

  static std::size_t component_count(Valence v, std::size_t dim) { return rank_of(v) == 1 ? dim : dim * dim; }

 private:
  Valence valence_;
  std::size_t dim_;
  std::vector<Expr> comps_;
};

namespace detail {
inline void require_same_shape(const TensorField& a, const TensorField& b) {
  if (a.valence() != b.valence() || a.dim() != b.dim()) throw std::invalid_argument("tensor shape mismatch");
}
inline void require(const TensorField& t, Valence v, const char* what) {
  if (t.valence() != v) throw std::invalid_argument(std::string(what) + ": wrong valence");
}
}  // namespace detail

inline TensorField operator+(const TensorField& a, const TensorField& b) {
  detail::require_same_shape(a, b);
  TensorField out = a;
  for (std::size_t i = 0; i < a.components().size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline TensorField operator-(const TensorField& a, const TensorField& b) {
  detail::require_same_shape(a, b);
  TensorField out = a;
  for (std::size_t i = 0; i < a.components().size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline TensorField operator-(const TensorField& a) {
  TensorField out = a;
  for (std::size_t i = 0; i < a.components().size(); ++i) out[i] = -a[i];
  return out;
}

inline TensorField operator*(const Expr& s, const TensorField& t) {
  TensorField out = t;
  for (std::size_t i = 0; i < t.components().size(); ++i) out[i] = s * t[i];
  return out;
}

inline TensorField& operator+=(TensorField& a, const TensorField& b) { return a = a + b; }
inline TensorField& operator-=(TensorField& a, const TensorField& b) { return a = a - b; }

/// v ⊗ w for a vector v and covector w: the (1,1) map X -> w(X) v.
inline TensorField outer(const TensorField& v, const TensorField& w) {
  if (v.valence() == Valence::Vector && w.valence() == Valence::Covector) {
    TensorField out(Valence::Mixed, v.dim());
    for (std::size_t c = 0; c < v.dim(); ++c)
      for (std::size_t b = 0; b < v.dim(); ++b) out(c, b) = v[c] * w[b];
    return out;
  }
  if (v.valence() == Valence::Covector && w.valence() == Valence::Covector) {
    TensorField out(Valence::Bilinear, v.dim());
    for (std::size_t a = 0; a < v.dim(); ++a)
      for (std::size_t b = 0; b < v.dim(); ++b) out(a, b) = v[a] * w[b];
    return out;
  }
  throw std::invalid_argument("outer: unsupported valences");
}

/// Composition of (1,1) fields: (A∘B)(X) = A(B(X)).
inline TensorField compose(const TensorField& a, const TensorField& b) {
  detail::require(a, Valence::Mixed, "compose");
  detail::require(b, Valence::Mixed, "compose");
  const std::size_t d = a.dim();
  TensorField out(Valence::Mixed, d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t e = 0; e < d; ++e) {
      Expr s;
      for (std::size_t k = 0; k < d; ++k) s += a(c, k) * b(k, e);
      out(c, e) = s;
    }
  return out;
}

/// A(X) for a (1,1) field A and vector field X.
inline TensorField apply(const TensorField& a, const TensorField& x) {
  detail::require(a, Valence::Mixed, "apply");
  detail::require(x, Valence::Vector, "apply");
  const std::size_t d = a.dim();
  TensorField out(Valence::Vector, d);
  for (std::size_t c = 0; c < d; ++c) {
    Expr s;
    for (std::size_t b = 0; b < d; ++b) s += a(c, b) * x[b];
    out[c] = s;
  }
  return out;
}

/// w(X).
inline Expr contract(const TensorField& w, const TensorField& x) {
  detail::require(w, Valence::Covector, "contract");
  detail::require(x, Valence::Vector, "contract");
  Expr s;
  for (std::size_t b = 0; b < w.dim(); ++b) s += w[b] * x[b];
  return s;
}

/// g(X, Y).
inline Expr bilinear(const TensorField& g, const TensorField& x, const TensorField& y) {
  detail::require(g, Valence::Bilinear, "bilinear");
  Expr s;
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t b = 0; b < g.dim(); ++b) s += g(a, b) * x[a] * y[b];
  return s;
}

/// The (0,2) field (X,Y) -> B(A X, Y).
inline TensorField precompose_first(const TensorField& bform, const TensorField& a) {
  detail::require(bform, Valence::Bilinear, "precompose_first");
  detail::require(a, Valence::Mixed, "precompose_first");
  const std::size_t d = a.dim();
  TensorField out(Valence::Bilinear, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Expr s;
      for (std::size_t k = 0; k < d; ++k) s += bform(k, j) * a(k, i);
      out(i, j) = s;
    }
  return out;
}

/// Component-wise partial derivative of every component.
inline TensorField differentiate(const TensorField& t, std::string_view var) {
  TensorField out = t;
  for (std::size_t i = 0; i < t.components().size(); ++i) out[i] = differentiate(t[i], var);
  return out;
}

}  // namespace contactgeo
