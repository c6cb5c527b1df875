#pragma once

// Lie brackets and Lie derivatives in coordinates, exact via symbolic
// differentiation of the components.

#include <vector>

#include "contactgeo/phase_space.hpp"
#include "contactgeo/tensor.hpp"

namespace contactgeo {

/// X(f) = X^c d_c f.
inline Expr directional_derivative(const PhaseSpace& s, const TensorField& x, const Expr& f) {
  detail::require(x, Valence::Vector, "directional_derivative");
  Expr out;
  for (std::size_t c = 0; c < s.dim(); ++c) {
    if (x[c].is_zero()) continue;
    out += x[c] * differentiate(f, s.coordinate_name(c));
  }
  return out;
}

namespace detail {

// jac[c][a] = d_a X^c
inline std::vector<std::vector<Expr>> vector_jacobian(const PhaseSpace& s, const TensorField& x) {
  std::vector<std::vector<Expr>> jac(s.dim(), std::vector<Expr>(s.dim()));
  for (std::size_t c = 0; c < s.dim(); ++c)
    for (std::size_t a = 0; a < s.dim(); ++a) jac[c][a] = differentiate(x[c], s.coordinate_name(a));
  return jac;
}

}  // namespace detail

/// [X,Y]^c = X^a d_a Y^c - Y^a d_a X^c.
inline TensorField lie_bracket(const PhaseSpace& s, const TensorField& x, const TensorField& y) {
  detail::require(x, Valence::Vector, "lie_bracket");
  detail::require(y, Valence::Vector, "lie_bracket");
  TensorField out(Valence::Vector, s.dim());
  for (std::size_t c = 0; c < s.dim(); ++c) out[c] = directional_derivative(s, x, y[c]) - directional_derivative(s, y, x[c]);
  return out;
}

/// Lie derivative of a scalar: X(f).
inline Expr lie_derivative(const PhaseSpace& s, const Expr& f, const TensorField& x) {
  return directional_derivative(s, x, f);
}

/// Lie derivative of a tensor field of any supported valence along X.
inline TensorField lie_derivative(const PhaseSpace& s, const TensorField& t, const TensorField& x) {
  detail::require(x, Valence::Vector, "lie_derivative");
  const std::size_t d = s.dim();
  if (t.valence() == Valence::Vector) return lie_bracket(s, x, t);

  const auto jac = detail::vector_jacobian(s, x);
  TensorField out(t.valence(), d);
  switch (t.valence()) {
    case Valence::Covector:
      // X^c d_c w_b + w_c d_b X^c
      for (std::size_t b = 0; b < d; ++b) {
        Expr acc = directional_derivative(s, x, t[b]);
        for (std::size_t c = 0; c < d; ++c) acc += t[c] * jac[c][b];
        out[b] = acc;
      }
      break;
    case Valence::Mixed:
      // X^e d_e T^c_b - T^e_b d_e X^c + T^c_e d_b X^e
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t b = 0; b < d; ++b) {
          Expr acc = directional_derivative(s, x, t(c, b));
          for (std::size_t e = 0; e < d; ++e) {
            acc -= t(e, b) * jac[c][e];
            acc += t(c, e) * jac[e][b];
          }
          out(c, b) = acc;
        }
      break;
    case Valence::Bilinear:
      // X^c d_c g_ab + g_cb d_a X^c + g_ac d_b X^c
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
          Expr acc = directional_derivative(s, x, t(a, b));
          for (std::size_t c = 0; c < d; ++c) {
            acc += t(c, b) * jac[c][a];
            acc += t(a, c) * jac[c][b];
          }
          out(a, b) = acc;
        }
      break;
    case Valence::Vector:
      break;
  }
  return out;
}

}  // namespace contactgeo
