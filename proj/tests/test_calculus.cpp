#include <cmath>

#include "test_support.hpp"

using namespace cgtest;

namespace {

TensorField random_field(const PhaseSpace& s, Sampler& sampler) {
  TensorField x(Valence::Vector, s.dim());
  for (std::size_t c = 0; c < s.dim(); ++c) x[c] = sampler.polynomial(s, 3, 2);
  return x;
}

LambdaFamily product(const PhaseSpace& s) { return LambdaFamily::product_power(s, 1); }

// dq⊗Q - dp⊗P for n = 1 at (1,2,3), as a (1,1) matrix.
Eigen::MatrixXd reflection_at_ref() { return mat({{0, 3, 0}, {0, 1, 0}, {0, 0, -1}}); }

}  // namespace

TEST(Bracket, AntisymmetryAndJacobi) {
  for (int n = 1; n <= 2; ++n) {
    const PhaseSpace s(n);
    Sampler sampler(51);
    for (int k = 0; k < 5; ++k) {
      const TensorField x = random_field(s, sampler), y = random_field(s, sampler), z = random_field(s, sampler);
      const TensorField jacobi = lie_bracket(s, x, lie_bracket(s, y, z)) + lie_bracket(s, y, lie_bracket(s, z, x)) +
                                 lie_bracket(s, z, lie_bracket(s, x, y));
      const TensorField anti = lie_bracket(s, x, y) + lie_bracket(s, y, x);
      for (const auto& p : sampler.points(s, 5)) {
        EXPECT_LE(max_abs(at(jacobi, s, p)), 1e-10);
        EXPECT_LE(max_abs(at(anti, s, p)), 1e-10);
        EXPECT_LE(max_abs(at(lie_bracket(s, x, x), s, p)), 0.0);
      }
    }
  }
}

TEST(Bracket, HeisenbergAndCommutator) {
  const PhaseSpace s(1);
  const HeisenbergFrame f = frame(s);
  EXPECT_EQ(vec(lie_bracket(s, f.P[0], f.Q[0]), s, ref1()), vec(f.xi, s, ref1()));
  const TensorField xs = hamiltonian_vector_field(s, scaling_generator(s));
  const TensorField xl = hamiltonian_vector_field(s, legendre_generator(s, 1));
  EXPECT_LE(max_abs(vec(lie_bracket(s, xs, xl), s, ref1()) - Eigen::Vector3d(-13, -6, -4)), 1e-12);
}

TEST(LieDerivative, Examples) {
  const PhaseSpace s(1);
  const TensorField xl = hamiltonian_vector_field(s, legendre_generator(s, 1));
  Sampler sampler(52);
  for (const auto& x : sampler.points(s, 10)) {
    EXPECT_LE(max_abs(at(lie_derivative(s, contact_form(s), xl), s, x)), 1e-12);
    EXPECT_LE(max_abs(at(lie_derivative(s, metric_from_structure(s, MetricKind::Composite).tensor, reeb(s)), s, x)),
              0.0);
  }
  const TensorField r = build_structure(s, StructureKind::Reflection);
  EXPECT_LE(max_abs(at(lie_derivative(s, r, xl), s, ref1()) - mat({{0, 0, -6}, {0, 0, -2}, {0, -2, 0}})), 1e-12);
}

TEST(LieDerivative, FunctionsAndLeibniz) {
  const PhaseSpace s(2);
  Sampler sampler(53);
  const Expr f = sampler.polynomial(s);
  const TensorField x = random_field(s, sampler);
  const TensorField eta = contact_form(s);
  // Lie_X (f eta) = X(f) eta + f Lie_X eta
  const TensorField lhs = lie_derivative(s, f * eta, x);
  const TensorField rhs = lie_derivative(s, f, x) * eta + f * lie_derivative(s, eta, x);
  for (const auto& p : sampler.points(s, 5)) EXPECT_LE(max_abs(at(lhs - rhs, s, p)), 1e-10);
}

TEST(Christoffel, SymmetricAndFlat) {
  const PhaseSpace s(1);
  const ChristoffelArray g = christoffel(s, metric_from_structure(s, MetricKind::ContactAcs).tensor, ref1());
  EXPECT_LE(g.lower_symmetry_residual(), 1e-14);
  bool finite = true;
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) finite = finite && std::isfinite(g(c, a, b));
  EXPECT_TRUE(finite);

  TensorField flat(Valence::Bilinear, s.dim());
  flat(0, 0) = Expr(2.0);
  flat(1, 1) = Expr(1.0);
  flat(2, 2) = Expr(-3.0);
  flat(1, 2) = flat(2, 1) = Expr(0.5);
  const ChristoffelArray zero = christoffel(s, flat, ref1());
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) EXPECT_EQ(zero(c, a, b), 0.0);
  EXPECT_EQ(max_abs(ricci_matrix(s, flat, ref1())), 0.0);
}

TEST(Christoffel, SingularMetric) {
  const PhaseSpace s(1);
  const TensorField degenerate = outer(contact_form(s), contact_form(s));
  EXPECT_THROW((void)christoffel(s, degenerate, ref1()), SingularMetricError);
  EXPECT_THROW((void)ricci(s, degenerate, ref1()), SingularMetricError);
}

TEST(Ricci, ContactMetricReferenceMatrix) {
  const PhaseSpace s(1);
  const CurvatureReport rep = ricci(s, metric_from_structure(s, MetricKind::ContactAcs).tensor, ref1(), {{4.0, -2.0}});
  EXPECT_LE(max_abs(rep.ricci - mat({{2, -6, 0}, {-6, 17, 0}, {0, 0, -1}})), 1e-12);
  EXPECT_LE(rep.einstein_residual, 1e-12);
  EXPECT_FALSE(rep.fitted);
}

TEST(Ricci, EtaEinsteinAllDimensions) {
  for (int n = 1; n <= 3; ++n) {
    const PhaseSpace s(n);
    const SymbolicMetricJet jet(s, metric_from_structure(s, MetricKind::ContactAcs).tensor);
    Sampler sampler(54);
    for (const auto& x : sampler.points(s, 5)) {
      const CurvatureReport asserted = ricci(jet, x, {{2.0 * n + 2, -2.0}});
      EXPECT_LE(asserted.einstein_residual, 1e-8);
      EXPECT_LE(asserted.symmetry_residual, 1e-8);
      const CurvatureReport fit = ricci(jet, x);
      EXPECT_TRUE(fit.fitted);
      EXPECT_NEAR(fit.lambda, 2.0 * n + 2, 1e-8);
      EXPECT_NEAR(fit.nu, -2.0, 1e-8);
    }
  }
}

TEST(Ricci, FiniteDifferenceFallbackAgrees) {
  const PhaseSpace s(1);
  const TensorField g = metric_from_structure(s, MetricKind::Lambda, product(s)).tensor;
  const MetricFunction numeric = [&](const Eigen::VectorXd& v) { return at(g, s, s.from_vector(v)); };
  const PhasePoint x = pt(0.3, {1.2}, {-0.8});
  EXPECT_LE(max_abs(ricci_matrix_fd(numeric, s.to_vector(x)) - ricci_matrix(s, g, x)), 1e-4);
}

TEST(NablaReeb, LambdaMetrics) {
  const PhaseSpace s(1);
  const LambdaFamily lam = product(s);
  const Eigen::MatrixXd nl = nabla_reeb(s, metric_from_structure(s, MetricKind::Lambda, lam).tensor, ref1());
  const Eigen::MatrixXd nb = nabla_reeb(s, metric_from_structure(s, MetricKind::LambdaBar, lam).tensor, ref1());
  EXPECT_LE(max_abs(nl + reflection_at_ref() / 6), 1e-12);
  EXPECT_LE(max_abs(nb + 6 * reflection_at_ref()), 1e-12);
  EXPECT_LE(max_abs(nl * Eigen::Vector3d(1, 0, 0)), 1e-14);
}

TEST(NablaReeb, MatchesStructuresAtRandomPoints) {
  for (int n = 1; n <= 2; ++n) {
    const PhaseSpace s(n);
    const LambdaFamily lam = product(s);
    const SymbolicMetricJet jl(s, metric_from_structure(s, MetricKind::Lambda, lam).tensor);
    const SymbolicMetricJet jb(s, metric_from_structure(s, MetricKind::LambdaBar, lam).tensor);
    const TensorField phi_l = build_structure(s, StructureKind::Lambda, lam);
    const TensorField phi_b = build_structure(s, StructureKind::LambdaBar, lam);
    const Eigen::MatrixXd one = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(s.dim()), static_cast<Eigen::Index>(s.dim()));
    Sampler sampler(55);
    for (const auto& x : sampler.points(s, 10)) {
      const Eigen::MatrixXd nl = nabla_reeb(jl, x), nb = nabla_reeb(jb, x);
      EXPECT_LE(max_abs(nl + at(phi_b, s, x)), 1e-9);
      EXPECT_LE(max_abs(nb + at(phi_l, s, x)), 1e-9);
      EXPECT_LE(max_abs(nl * nb - (one - at(eta_xi(s), s, x))), 1e-9);
    }
  }
}

TEST(Connection, MetricCompatible) {
  const PhaseSpace s(2);
  Sampler sampler(56);
  for (auto k : {MetricKind::ContactAcs, MetricKind::Reflection, MetricKind::Lambda}) {
    const SymbolicMetricJet jet(s, metric_from_structure(s, k, product(s)).tensor);
    for (const auto& x : sampler.points(s, 10)) EXPECT_LE(metric_compatibility_residual(jet, x), 1e-8);
  }
}

TEST(Kappa, Examples) {
  const PhaseSpace s(1);
  Sampler sampler(57);
  const TensorField kr = kappa(s, build_structure(s, StructureKind::Reflection));
  const TensorField kl = kappa(s, build_structure(s, StructureKind::Lambda, product(s)));
  const TensorField kw = kappa(s, build_structure(s, StructureKind::Lambda, LambdaFamily{{parse("w*q1*p1")}}));
  const TensorField half_qp_r = (0.5 * s.q(1) * s.p(1)) * build_structure(s, StructureKind::Reflection);
  for (const auto& x : sampler.points(s, 10)) {
    EXPECT_EQ(max_abs(at(kr, s, x)), 0.0);
    EXPECT_EQ(max_abs(at(kl, s, x)), 0.0);
    EXPECT_LE(max_abs(at(kw - half_qp_r, s, x)), 1e-12);
  }
  EXPECT_LE(max_abs(at(kw, s, ref1()) - mat({{0, 9, 0}, {0, 3, 0}, {0, 0, -3}})), 1e-12);
}

TEST(Killing, Examples) {
  const PhaseSpace s(2);
  Sampler sampler(58);
  const TensorField acs = metric_from_structure(s, MetricKind::ContactAcs).tensor;
  const TensorField gl = metric_from_structure(s, MetricKind::Lambda, product(s)).tensor;
  const TensorField xs = hamiltonian_vector_field(s, scaling_generator(s));
  for (const auto& x : sampler.points(s, 10)) {
    EXPECT_EQ(killing_residual(s, gl, reeb(s), x), 0.0);
    EXPECT_EQ(killing_residual(s, acs, reeb(s), x), 0.0);
    EXPECT_NEAR(killing_residual(s, acs, xs, x), 1.0, 1e-12);
  }
}
