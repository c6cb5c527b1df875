#pragma once

// The (1,1) automorphism fields on the phase space: the almost contact
// structure phi, the almost para-contact structures phi_pi, phi_r, phi_s,
// and the Lambda-scaled reflections phi_Lambda, phi_LambdaBar.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "contactgeo/hamiltonian.hpp"
#include "contactgeo/phase_space.hpp"
#include "contactgeo/tensor.hpp"

namespace contactgeo {

enum class StructureKind { AlmostContact, Rotation, Reflection, Composite, Lambda, LambdaBar };

constexpr std::string_view to_string(StructureKind k) {
  switch (k) {
    case StructureKind::AlmostContact:
      return "phi";
    case StructureKind::Rotation:
      return "phi_pi";
    case StructureKind::Reflection:
      return "phi_r";
    case StructureKind::Composite:
      return "phi_s";
    case StructureKind::Lambda:
      return "phi_lambda";
    case StructureKind::LambdaBar:
      return "phi_lambdabar";
  }
  return "?";
}

constexpr bool needs_lambda(StructureKind k) { return k == StructureKind::Lambda || k == StructureKind::LambdaBar; }

/// Index-wise scaling functions Lambda_(a)(w, q, p), a = 1..n.
struct LambdaFamily {
  std::vector<Expr> components;
  bool claims_scaling_invariant = false;
  bool claims_legendre_invariant = false;
  bool claims_odd = false;

  [[nodiscard]] const Expr& operator()(int a) const { return components.at(static_cast<std::size_t>(a - 1)); }
  [[nodiscard]] std::size_t size() const { return components.size(); }

  /// Instantiates a template written in bare q, p (and w) for every index:
  /// "q*p" becomes q1*p1, q2*p2, ...
  static LambdaFamily from_template(const Expr& tmpl, const PhaseSpace& s) {
    LambdaFamily f;
    for (int a = 1; a <= s.n(); ++a) {
      f.components.push_back(substitute(tmpl, {{"q", s.q(a)}, {"p", s.p(a)}}));
    }
    return f;
  }

  /// (q^a p_a)^k. Odd k gives the Legendre-invariant product family.
  static LambdaFamily product_power(const PhaseSpace& s, int k) {
    LambdaFamily f;
    for (int a = 1; a <= s.n(); ++a) f.components.push_back(pow(s.q(a) * s.p(a), k));
    f.claims_scaling_invariant = true;
    f.claims_odd = (k % 2 != 0);
    f.claims_legendre_invariant = f.claims_odd;
    return f;
  }

  [[nodiscard]] LambdaFamily reciprocal() const {
    LambdaFamily f = *this;
    for (auto& c : f.components) c = Expr::constant(1.0) / c;
    return f;
  }
};

namespace detail {

inline void require_lambda(const PhaseSpace& s, const LambdaFamily* lambda) {
  if (lambda == nullptr) throw std::invalid_argument("structure needs a Lambda family");
  if (lambda->size() != static_cast<std::size_t>(s.n())) {
    throw std::invalid_argument("Lambda family must have n components");
  }
}

// sum_a c_a (dq^a ⊗ Q_a - dp_a ⊗ P^a)
inline TensorField scaled_reflection(const PhaseSpace& s, const std::vector<Expr>& coeff) {
  const HeisenbergFrame f = frame(s);
  TensorField out(Valence::Mixed, s.dim());
  for (int a = 1; a <= s.n(); ++a) {
    const auto i = static_cast<std::size_t>(a - 1);
    out += coeff[i] * (outer(f.Q[i], s.dq(a)) - outer(f.P[i], s.dp(a)));
  }
  return out;
}

}  // namespace detail

/// Builds the coordinate components of the requested structure. Lambda and
/// LambdaBar need `lambda`; the others ignore it.
inline TensorField build_structure(const PhaseSpace& s, StructureKind kind, const LambdaFamily* lambda = nullptr) {
  const HeisenbergFrame f = frame(s);
  TensorField out(Valence::Mixed, s.dim());
  auto dqQ = [&](int a) { return outer(f.Q[static_cast<std::size_t>(a - 1)], s.dq(a)); };
  auto dqP = [&](int a) { return outer(f.P[static_cast<std::size_t>(a - 1)], s.dq(a)); };
  auto dpQ = [&](int a) { return outer(f.Q[static_cast<std::size_t>(a - 1)], s.dp(a)); };
  auto dpP = [&](int a) { return outer(f.P[static_cast<std::size_t>(a - 1)], s.dp(a)); };

  switch (kind) {
    case StructureKind::AlmostContact:
      for (int a = 1; a <= s.n(); ++a) out += dpQ(a) - dqP(a);
      return out;
    case StructureKind::Rotation:
      for (int a = 1; a <= s.n(); ++a) out -= dqQ(a) + dpP(a);
      return out;
    case StructureKind::Reflection:
      for (int a = 1; a <= s.n(); ++a) out += dqQ(a) - dpP(a);
      return out;
    case StructureKind::Composite:
      for (int a = 1; a <= s.n(); ++a) out += dqP(a) + dpQ(a);
      return out;
    case StructureKind::Lambda:
      detail::require_lambda(s, lambda);
      return detail::scaled_reflection(s, lambda->components);
    case StructureKind::LambdaBar:
      detail::require_lambda(s, lambda);
      return detail::scaled_reflection(s, lambda->reciprocal().components);
  }
  return out;
}

inline TensorField build_structure(const PhaseSpace& s, StructureKind kind, const LambdaFamily& lambda) {
  return build_structure(s, kind, &lambda);
}

/// 1_Lambda = eta ⊗ xi + sum Lambda_(a)^2 (dq^a ⊗ Q_a + dp_a ⊗ P^a), so that
/// phi_Lambda^2 = 1_Lambda - eta ⊗ xi.
inline TensorField lambda_identity(const PhaseSpace& s, const LambdaFamily& lambda) {
  detail::require_lambda(s, &lambda);
  const HeisenbergFrame f = frame(s);
  TensorField out = eta_xi(s);
  for (int a = 1; a <= s.n(); ++a) {
    const auto i = static_cast<std::size_t>(a - 1);
    out += pow(lambda(a), 2) * (outer(f.Q[i], s.dq(a)) + outer(f.P[i], s.dp(a)));
  }
  return out;
}

struct IdentityResidual {
  std::string identity;
  double max_residual = 0.0;
  std::size_t points = 0;
};

inline double max_abs_residual(const TensorField& t, const PhaseSpace& s, const std::vector<PhasePoint>& points) {
  double worst = 0.0;
  for (const auto& x : points) worst = std::max(worst, t.evaluate(s.bindings(x)).cwiseAbs().maxCoeff());
  return worst;
}

/// Evaluates the defining identities of `kind` at the sample points.
inline std::vector<IdentityResidual> check_structure_identities(const PhaseSpace& s, StructureKind kind,
                                                                const LambdaFamily* lambda,
                                                                const std::vector<PhasePoint>& points) {
  const TensorField phi = build_structure(s, kind, lambda);
  const TensorField ex = eta_xi(s);
  const TensorField one = identity(s);
  std::vector<IdentityResidual> out;
  auto record = [&](std::string name, const TensorField& residual) {
    out.push_back({std::move(name), max_abs_residual(residual, s, points), points.size()});
  };

  const TensorField sq = compose(phi, phi);
  switch (kind) {
    case StructureKind::AlmostContact:
      record("phi^2 = -1 + eta⊗xi", sq - (ex - one));
      break;
    case StructureKind::Rotation:
    case StructureKind::Reflection:
    case StructureKind::Composite:
      record(std::string(to_string(kind)) + "^2 = 1 - eta⊗xi", sq - (one - ex));
      break;
    case StructureKind::Lambda:
    case StructureKind::LambdaBar: {
      const LambdaFamily scale = kind == StructureKind::Lambda ? *lambda : lambda->reciprocal();
      record(std::string(to_string(kind)) + "^2 = 1_Lambda - eta⊗xi", sq - (lambda_identity(s, scale) - ex));
      const TensorField other =
          build_structure(s, kind == StructureKind::Lambda ? StructureKind::LambdaBar : StructureKind::Lambda, lambda);
      record("phi_lambda∘phi_lambdabar = 1 - eta⊗xi", compose(phi, other) - (one - ex));
      record("phi_lambdabar∘phi_lambda = 1 - eta⊗xi", compose(other, phi) - (one - ex));
      break;
    }
  }

  // eta∘phi = 0 and phi(xi) = 0
  const TensorField eta = contact_form(s);
  TensorField eta_phi(Valence::Covector, s.dim());
  for (std::size_t b = 0; b < s.dim(); ++b) {
    Expr acc;
    for (std::size_t c = 0; c < s.dim(); ++c) acc += eta[c] * phi(c, b);
    eta_phi[b] = acc;
  }
  record("eta∘phi = 0", eta_phi);
  record("phi(xi) = 0", apply(phi, reeb(s)));
  return out;
}

/// Per-index residual of  sum_b (p_b dLambda_(a)/dp_b - q^b dLambda_(a)/dq^b) = 0,
/// i.e. of X_{h_S}(Lambda_(a)) = 0 up to sign.
inline std::vector<double> lambda_scaling_residual(const PhaseSpace& s, const LambdaFamily& lambda,
                                                   const PhasePoint& x) {
  detail::require_lambda(s, &lambda);
  const Bindings bind = s.bindings(x);
  std::vector<double> out;
  for (int a = 1; a <= s.n(); ++a) {
    double r = 0.0;
    for (int b = 1; b <= s.n(); ++b) {
      r += x.p[b - 1] * evaluate(differentiate(lambda(a), s.coordinate_name(s.p_index(b))), bind);
      r -= x.q[b - 1] * evaluate(differentiate(lambda(a), s.coordinate_name(s.q_index(b))), bind);
    }
    out.push_back(r);
  }
  return out;
}

/// Residual of the finite Legendre-invariance conditions under the partial
/// Legendre map on `subset`: Lambda_(i)(Phi x) + Lambda_(i)(x) for i in the
/// subset, Lambda_(I)(Phi x) - Lambda_(I)(x) otherwise.
inline std::vector<double> lambda_legendre_residual(const PhaseSpace& s, const LambdaFamily& lambda,
                                                    const IndexSubset& subset, const PhasePoint& x) {
  detail::require_lambda(s, &lambda);
  const Bindings before = s.bindings(x);
  const Bindings after = s.bindings(partial_legendre(subset, x));
  std::vector<double> out;
  for (int a = 1; a <= s.n(); ++a) {
    const double moved = evaluate(lambda(a), after);
    const double orig = evaluate(lambda(a), before);
    out.push_back(subset.contains(a) ? moved + orig : moved - orig);
  }
  return out;
}

}  // namespace contactgeo
