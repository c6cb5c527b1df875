#pragma once

// Immutable symbolic expressions over named real variables, with exact
// partial differentiation and IEEE double evaluation.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>

namespace contactgeo {

/// Exact exponent for power nodes. Always normalized: den > 0, gcd(num, den) == 1.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num(n), den(1) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const auto g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  [[nodiscard]] bool is_integer() const { return den == 1; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend Rational operator-(const Rational& r, std::int64_t k) { return {r.num - k * r.den, r.den}; }
};

inline std::string to_string(const Rational& r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

using Bindings = std::map<std::string, double, std::less<>>;

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Expr {
 public:
  enum class Kind : std::uint8_t { Constant, Variable, Add, Sub, Mul, Div, Pow, Neg, Exp, Log, Sin, Cos };

  Expr() : Expr(constant(0.0)) {}
  Expr(double v) : Expr(constant(v)) {}  // NOLINT(google-explicit-constructor)

  static Expr constant(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->value = v;
    return Expr(std::move(n));
  }

  static Expr variable(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->name = std::move(name);
    return Expr(std::move(n));
  }

  /// Builds a node exactly as given, without any folding. Used by the parser
  /// so that parse() yields the literal syntax tree.
  static Expr raw(Kind kind, const Expr& a, const Expr& b = Expr::constant(0.0), Rational exponent = {}) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->children[0] = a.node_;
    if (arity(kind) == 2) n->children[1] = b.node_;
    n->exponent = exponent;
    return Expr(std::move(n));
  }

  static constexpr int arity(Kind k) {
    switch (k) {
      case Kind::Constant:
      case Kind::Variable:
        return 0;
      case Kind::Add:
      case Kind::Sub:
      case Kind::Mul:
      case Kind::Div:
        return 2;
      default:
        return 1;
    }
  }

  [[nodiscard]] Kind kind() const { return node_->kind; }
  [[nodiscard]] double constant_value() const { return node_->value; }
  [[nodiscard]] const std::string& name() const { return node_->name; }
  [[nodiscard]] const Rational& exponent() const { return node_->exponent; }
  [[nodiscard]] Expr operand(std::size_t i) const { return Expr(node_->children.at(i)); }
  [[nodiscard]] const void* id() const { return node_.get(); }

  [[nodiscard]] bool is_constant() const { return node_->kind == Kind::Constant; }
  [[nodiscard]] bool is_constant(double v) const { return is_constant() && node_->value == v; }
  [[nodiscard]] bool is_zero() const { return is_constant(0.0); }
  [[nodiscard]] bool is_one() const { return is_constant(1.0); }

  /// Structural (AST) equality.
  friend bool operator==(const Expr& a, const Expr& b) { return equal_nodes(a.node_.get(), b.node_.get()); }

 private:
  struct Node {
    Kind kind = Kind::Constant;
    double value = 0.0;
    std::string name;
    Rational exponent;
    std::array<std::shared_ptr<const Node>, 2> children;
  };

  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static bool equal_nodes(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case Kind::Constant:
        return a->value == b->value;
      case Kind::Variable:
        return a->name == b->name;
      case Kind::Pow:
        if (!(a->exponent == b->exponent)) return false;
        break;
      default:
        break;
    }
    const int k = arity(a->kind);
    for (int i = 0; i < k; ++i) {
      if (!equal_nodes(a->children[i].get(), b->children[i].get())) return false;
    }
    return true;
  }

  std::shared_ptr<const Node> node_;
};

// Builders. These apply constant folding and the 0/1 identities only.

inline Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() + b.constant_value());
  return Expr::raw(Expr::Kind::Add, a, b);
}

inline Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr::constant(-a.constant_value());
  if (a.kind() == Expr::Kind::Neg) return a.operand(0);
  return Expr::raw(Expr::Kind::Neg, a);
}

inline Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() - b.constant_value());
  if (a == b) return Expr::constant(0.0);
  return Expr::raw(Expr::Kind::Sub, a, b);
}

inline Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr::constant(0.0);
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.is_constant(-1.0)) return -b;
  if (b.is_constant(-1.0)) return -a;
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() * b.constant_value());
  return Expr::raw(Expr::Kind::Mul, a, b);
}

inline Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_one()) return a;
  if (a.is_zero() && !b.is_zero()) return Expr::constant(0.0);
  if (a.is_constant() && b.is_constant() && b.constant_value() != 0.0) {
    return Expr::constant(a.constant_value() / b.constant_value());
  }
  return Expr::raw(Expr::Kind::Div, a, b);
}

inline Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
inline Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
inline Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

namespace detail {

inline double real_power(double base, const Rational& r) {
  if (base == 0.0 && r.num < 0) throw EvaluationError("zero raised to a negative power");
  if (r.is_integer()) return std::pow(base, static_cast<double>(r.num));
  if (base < 0.0) {
    if (r.den % 2 == 0) throw EvaluationError("even root of a negative number");
    const double mag = std::pow(-base, r.value());
    return (r.num % 2 == 0) ? mag : -mag;
  }
  return std::pow(base, r.value());
}

}  // namespace detail

inline Expr pow(const Expr& base, const Rational& r) {
  if (r.num == 0) return Expr::constant(1.0);
  if (r == Rational(1)) return base;
  if (base.is_constant()) {
    const double v = base.constant_value();
    if (!(v == 0.0 && r.num < 0) && !(v < 0.0 && r.den % 2 == 0)) {
      return Expr::constant(detail::real_power(v, r));
    }
  }
  return Expr::raw(Expr::Kind::Pow, base, Expr::constant(0.0), r);
}

inline Expr exp(const Expr& a) {
  if (a.is_constant()) return Expr::constant(std::exp(a.constant_value()));
  return Expr::raw(Expr::Kind::Exp, a);
}

inline Expr log(const Expr& a) {
  if (a.is_one()) return Expr::constant(0.0);
  if (a.is_constant() && a.constant_value() > 0.0) return Expr::constant(std::log(a.constant_value()));
  return Expr::raw(Expr::Kind::Log, a);
}

inline Expr sin(const Expr& a) {
  if (a.is_constant()) return Expr::constant(std::sin(a.constant_value()));
  return Expr::raw(Expr::Kind::Sin, a);
}

inline Expr cos(const Expr& a) {
  if (a.is_constant()) return Expr::constant(std::cos(a.constant_value()));
  return Expr::raw(Expr::Kind::Cos, a);
}

inline Expr var(std::string name) { return Expr::variable(std::move(name)); }

/// Exact partial derivative d e / d var.
inline Expr differentiate(const Expr& e, std::string_view var) {
  std::unordered_map<const void*, Expr> memo;
  std::function<Expr(const Expr&)> d = [&](const Expr& x) -> Expr {
    if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
    Expr r;
    using K = Expr::Kind;
    switch (x.kind()) {
      case K::Constant:
        r = 0.0;
        break;
      case K::Variable:
        r = (x.name() == var) ? 1.0 : 0.0;
        break;
      case K::Add:
        r = d(x.operand(0)) + d(x.operand(1));
        break;
      case K::Sub:
        r = d(x.operand(0)) - d(x.operand(1));
        break;
      case K::Mul: {
        const Expr u = x.operand(0), v = x.operand(1);
        r = d(u) * v + u * d(v);
        break;
      }
      case K::Div: {
        const Expr u = x.operand(0), v = x.operand(1);
        const Expr du = d(u), dv = d(v);
        if (dv.is_zero()) {
          r = du / v;
        } else {
          r = (du * v - u * dv) / pow(v, 2);
        }
        break;
      }
      case K::Pow: {
        const Expr u = x.operand(0);
        const Rational& k = x.exponent();
        r = Expr::constant(k.value()) * pow(u, k - 1) * d(u);
        break;
      }
      case K::Neg:
        r = -d(x.operand(0));
        break;
      case K::Exp:
        r = x * d(x.operand(0));
        break;
      case K::Log:
        r = d(x.operand(0)) / x.operand(0);
        break;
      case K::Sin:
        r = cos(x.operand(0)) * d(x.operand(0));
        break;
      case K::Cos:
        r = -(sin(x.operand(0)) * d(x.operand(0)));
        break;
    }
    memo.emplace(x.id(), r);
    return r;
  };
  return d(e);
}

inline double evaluate(const Expr& e, const Bindings& b) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Constant:
      return e.constant_value();
    case K::Variable: {
      auto it = b.find(e.name());
      if (it == b.end()) throw EvaluationError("unbound variable '" + e.name() + "'");
      return it->second;
    }
    case K::Add:
      return evaluate(e.operand(0), b) + evaluate(e.operand(1), b);
    case K::Sub:
      return evaluate(e.operand(0), b) - evaluate(e.operand(1), b);
    case K::Mul:
      return evaluate(e.operand(0), b) * evaluate(e.operand(1), b);
    case K::Div: {
      const double den = evaluate(e.operand(1), b);
      if (den == 0.0) throw EvaluationError("division by zero");
      return evaluate(e.operand(0), b) / den;
    }
    case K::Pow:
      return detail::real_power(evaluate(e.operand(0), b), e.exponent());
    case K::Neg:
      return -evaluate(e.operand(0), b);
    case K::Exp:
      return std::exp(evaluate(e.operand(0), b));
    case K::Log: {
      const double v = evaluate(e.operand(0), b);
      if (!(v > 0.0)) throw EvaluationError("log of non-positive value");
      return std::log(v);
    }
    case K::Sin:
      return std::sin(evaluate(e.operand(0), b));
    case K::Cos:
      return std::cos(evaluate(e.operand(0), b));
  }
  throw EvaluationError("corrupt expression node");
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Fully parenthesized rendering; parse(to_string(e)) == e for parsed trees.
inline std::string to_string(const Expr& e) {
  using K = Expr::Kind;
  auto bin = [&](const char* op) {
    return "(" + to_string(e.operand(0)) + op + to_string(e.operand(1)) + ")";
  };
  switch (e.kind()) {
    case K::Constant: {
      const double v = e.constant_value();
      return v < 0.0 ? "(-" + format_double(-v) + ")" : format_double(v);
    }
    case K::Variable:
      return e.name();
    case K::Add:
      return bin(" + ");
    case K::Sub:
      return bin(" - ");
    case K::Mul:
      return bin("*");
    case K::Div:
      return bin("/");
    case K::Pow: {
      // Exponent is always wrapped: "x^2/3" would read back as x^(2/3).
      return "(" + to_string(e.operand(0)) + ")^(" + to_string(e.exponent()) + ")";
    }
    case K::Neg:
      // '-' binds tighter than '^', so a negated power needs its own parentheses.
      if (e.operand(0).kind() == K::Pow) return "(-(" + to_string(e.operand(0)) + "))";
      return "(-" + to_string(e.operand(0)) + ")";
    case K::Exp:
      return "exp(" + to_string(e.operand(0)) + ")";
    case K::Log:
      return "log(" + to_string(e.operand(0)) + ")";
    case K::Sin:
      return "sin(" + to_string(e.operand(0)) + ")";
    case K::Cos:
      return "cos(" + to_string(e.operand(0)) + ")";
  }
  return "?";
}

inline void collect_variables(const Expr& e, std::set<std::string>& out) {
  if (e.kind() == Expr::Kind::Variable) {
    out.insert(e.name());
    return;
  }
  for (int i = 0; i < Expr::arity(e.kind()); ++i) collect_variables(e.operand(i), out);
}

inline std::set<std::string> free_variables(const Expr& e) {
  std::set<std::string> out;
  collect_variables(e, out);
  return out;
}

/// Replaces variables by expressions, re-folding along the way.
inline Expr substitute(const Expr& e, const std::map<std::string, Expr, std::less<>>& subs) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Constant:
      return e;
    case K::Variable: {
      auto it = subs.find(e.name());
      return it == subs.end() ? e : it->second;
    }
    case K::Add:
      return substitute(e.operand(0), subs) + substitute(e.operand(1), subs);
    case K::Sub:
      return substitute(e.operand(0), subs) - substitute(e.operand(1), subs);
    case K::Mul:
      return substitute(e.operand(0), subs) * substitute(e.operand(1), subs);
    case K::Div:
      return substitute(e.operand(0), subs) / substitute(e.operand(1), subs);
    case K::Pow:
      return pow(substitute(e.operand(0), subs), e.exponent());
    case K::Neg:
      return -substitute(e.operand(0), subs);
    case K::Exp:
      return exp(substitute(e.operand(0), subs));
    case K::Log:
      return log(substitute(e.operand(0), subs));
    case K::Sin:
      return sin(substitute(e.operand(0), subs));
    case K::Cos:
      return cos(substitute(e.operand(0), subs));
  }
  return e;
}

}  // namespace contactgeo
