#include <cmath>
#include <random>
#include <string>

#include "test_support.hpp"

using namespace cgtest;

namespace {

double eval(const std::string& text, const Bindings& b) { return evaluate(parse(text), b); }

// Random smooth trees over x and y. Risky operations are wrapped so every
// node stays finite on [-1, 1]^2.
class TreeGen {
 public:
  explicit TreeGen(std::uint64_t seed) : rng_(seed) {}

  Expr make(int depth) {
    if (depth == 0 || pick(4) == 0) return leaf();
    const Expr a = make(depth - 1);
    switch (pick(10)) {
      case 0:
        return a + make(depth - 1);
      case 1:
        return a - make(depth - 1);
      case 2:
        return a * make(depth - 1);
      case 3:
        return a / (Expr(1.5) + cos(make(depth - 1)));
      case 4:
        return pow(Expr(1.5) + sin(a), Rational(pick(7) - 3, 1 + pick(3)));
      case 5:
        return pow(a, Rational(1 + pick(3)));
      case 6:
        return -a;
      case 7:
        return exp(sin(a));
      case 8:
        return log(Expr(2.0) + sin(a));
      default:
        return pick(2) == 0 ? sin(a) : cos(a);
    }
  }

  Bindings point() {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {{"x", u(rng_)}, {"y", u(rng_)}};
  }

 private:
  int pick(int k) { return std::uniform_int_distribution<int>(0, k - 1)(rng_); }

  Expr leaf() {
    switch (pick(3)) {
      case 0:
        return var("x");
      case 1:
        return var("y");
      default:
        return Expr(static_cast<double>(pick(9) - 4) / 2.0);
    }
  }

  std::mt19937_64 rng_;
};

}  // namespace

TEST(Parse, ProductIsMulOfVariables) {
  const Expr e = parse("q1*p1");
  ASSERT_EQ(e.kind(), Expr::Kind::Mul);
  EXPECT_EQ(e.operand(0), var("q1"));
  EXPECT_EQ(e.operand(1), var("p1"));
}

TEST(Parse, RotationGenerator) {
  const PhaseSpace s(1);
  EXPECT_EQ(parse("0.5*(q1^2 + p1^2)"), parse(to_string(legendre_generator(s, 1).h)));
  EXPECT_DOUBLE_EQ(eval("0.5*(q1^2 + p1^2)", {{"q1", 2}, {"p1", 3}}), 6.5);
}

TEST(Parse, UnbalancedParenReportsOffset) {
  try {
    (void)parse("q1*(");
    FAIL() << "expected a syntax error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 3u);
  }
}

TEST(Parse, Errors) {
  EXPECT_THROW((void)parse("foo(x)"), ParseError);
  EXPECT_THROW((void)parse(""), ParseError);
  EXPECT_THROW((void)parse("x +"), ParseError);
  EXPECT_THROW((void)parse("x ^ y"), ParseError);
  EXPECT_THROW((void)parse("x ^ 1/0"), ParseError);
  EXPECT_THROW((void)parse("2x"), ParseError);
  EXPECT_THROW((void)parse("x)"), ParseError);
  EXPECT_THROW((void)parse("exp x"), ParseError);
}

TEST(Parse, Precedence) {
  const Bindings b{{"x", 2}, {"y", 3}};
  EXPECT_DOUBLE_EQ(eval("1 + x*y", b), 7);
  EXPECT_DOUBLE_EQ(eval("x - y - 1", b), -2);
  EXPECT_DOUBLE_EQ(eval("x/y/2", b), 1.0 / 3.0);
  // Unary minus binds tighter than ^ in this grammar: -x^2 = (-x)^2.
  EXPECT_DOUBLE_EQ(eval("-x^2", b), 4);
  EXPECT_DOUBLE_EQ(eval("-(x^2)", b), -4);
  EXPECT_DOUBLE_EQ(eval("x^-1", b), 0.5);
  EXPECT_DOUBLE_EQ(eval("x^(-1)", b), 0.5);
  EXPECT_DOUBLE_EQ(eval("y^2/3", b), std::pow(3.0, 2.0 / 3.0));
  EXPECT_DOUBLE_EQ(eval("exp(0) + log(1) + sin(0) + cos(0)", b), 2);
  EXPECT_DOUBLE_EQ(eval("1e-1 * x_1", {{"x_1", 10}}), 1);
}

TEST(Differentiate, SpecExamples) {
  const Bindings b{{"q1", 2}, {"p1", 3}, {"S", 0.7}, {"V", 1.3}};
  EXPECT_EQ(to_string(differentiate(parse("q1*p1"), "p1")), "q1");
  EXPECT_DOUBLE_EQ(evaluate(differentiate(parse("0.5*(q1^2+p1^2)"), "q1"), b), 2);
  const Expr u = parse("exp(S)*V^(-2/3)");
  EXPECT_NEAR(evaluate(differentiate(u, "S"), b), evaluate(u, b), 1e-15);
  EXPECT_TRUE(differentiate(parse("q1*p1"), "w").is_zero());
}

TEST(Differentiate, RationalExponentStaysExact) {
  const Expr d = differentiate(parse("V^(-2/3)"), "V");
  ASSERT_EQ(d.kind(), Expr::Kind::Mul);
  const Bindings b{{"V", 8}};
  EXPECT_DOUBLE_EQ(evaluate(d, b), -2.0 / 3.0 * std::pow(8.0, -5.0 / 3.0));
}

TEST(Evaluate, Examples) {
  EXPECT_DOUBLE_EQ(eval("q1*p1", {{"q1", 2}, {"p1", 3}}), 6);
  EXPECT_DOUBLE_EQ(eval("0.5*(q1^2+p1^2)", {{"q1", 2}, {"p1", 3}}), 6.5);
}

TEST(Evaluate, Errors) {
  EXPECT_THROW((void)eval("1/q1", {{"q1", 0}}), EvaluationError);
  EXPECT_THROW((void)eval("log(q1)", {{"q1", -1}}), EvaluationError);
  EXPECT_THROW((void)eval("log(q1)", {{"q1", 0}}), EvaluationError);
  EXPECT_THROW((void)eval("q1^(-1)", {{"q1", 0}}), EvaluationError);
  EXPECT_THROW((void)eval("q1 + p1", {{"q1", 1}}), EvaluationError);
}

TEST(Expr, FreeVariablesAndSubstitute) {
  const Expr e = parse("q*p + w");
  EXPECT_EQ(free_variables(e), (std::set<std::string>{"p", "q", "w"}));
  const Expr f = substitute(e, {{"q", var("q2")}, {"p", var("p2")}});
  EXPECT_EQ(free_variables(f), (std::set<std::string>{"p2", "q2", "w"}));
  EXPECT_DOUBLE_EQ(evaluate(f, {{"q2", 2}, {"p2", 3}, {"w", 1}}), 7);
}

TEST(Expr, RationalNormalization) {
  const Rational r(4, -6);
  EXPECT_EQ(r.num, -2);
  EXPECT_EQ(r.den, 3);
  EXPECT_THROW(Rational(1, 0), std::invalid_argument);
}

TEST(ExprProperty, DerivativeMatchesCentralDifference) {
  // Central differences are only an oracle where their own truncation error
  // h^2 |f'''| / 6 is small, so steep samples are redrawn (at a bounded rate).
  TreeGen gen(20241);
  const double h = 1e-5;
  int accepted = 0, redrawn = 0;
  while (accepted < 1000) {
    const Expr e = gen.make(4);
    const Bindings b = gen.point();
    bool usable = true;
    for (const char* x : {"x", "y"}) {
      const Expr d1 = differentiate(e, x);
      const double third = evaluate(differentiate(differentiate(d1, x), x), b);
      if (h * h * std::abs(third) / 6 > 1e-8 * (1 + std::abs(evaluate(d1, b)))) usable = false;
    }
    if (!usable) {
      ++redrawn;
      continue;
    }
    for (const char* x : {"x", "y"}) {
      const double exact = evaluate(differentiate(e, x), b);
      Bindings up = b, down = b;
      up[x] += h;
      down[x] -= h;
      const double fd = (evaluate(e, up) - evaluate(e, down)) / (2 * h);
      ASSERT_LE(std::abs(exact - fd), 1e-6 * (1 + std::abs(exact))) << to_string(e) << " d/d" << x;
    }
    ++accepted;
  }
  EXPECT_LT(redrawn, 50);
}

TEST(ExprProperty, DerivativeIsLinear) {
  TreeGen gen(77);
  for (int k = 0; k < 200; ++k) {
    const Expr e1 = gen.make(3);
    const Expr e2 = gen.make(3);
    const double a = -2.5 + 0.05 * k;
    const Bindings b = gen.point();
    const double lhs = evaluate(differentiate(Expr(a) * e1 + e2, "x"), b);
    const double rhs = a * evaluate(differentiate(e1, "x"), b) + evaluate(differentiate(e2, "x"), b);
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * (1 + std::abs(rhs)));
  }
}

TEST(ExprProperty, ParsePrintParseIsParse) {
  TreeGen gen(5);
  for (int k = 0; k < 500; ++k) {
    const std::string text = to_string(gen.make(4));
    const Expr once = parse(text);
    EXPECT_EQ(parse(to_string(once)), once) << text;
  }
  for (const char* text : {"q1*p1", "0.5*(q1^2 + p1^2)", "exp(S)*V^(-2/3)", "-T*log(V - 1) - 1/V - 1.5*T*log(T)",
                           "-x^-2/3", "1e-3*w - -w", "-(x^2)", "-(-x)^3"}) {
    const Expr once = parse(text);
    EXPECT_EQ(parse(to_string(once)), once) << text;
  }
}

TEST(ExprProperty, PrintIsSemanticsPreserving) {
  TreeGen gen(9);
  for (int k = 0; k < 200; ++k) {
    const Expr e = gen.make(4);
    const Bindings b = gen.point();
    EXPECT_EQ(evaluate(parse(to_string(e)), b), evaluate(e, b)) << to_string(e);
  }
}
