#pragma once

// Recursive-descent parser for the expression grammar:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' signed-rational)?
//   base   := number | ident | '(' expr ')' | func '(' expr ')' | '-' base
//   func   := exp | log | sin | cos
//
// A signed rational is  '-'? int ('/' int)?  optionally wrapped in parentheses.

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "contactgeo/expr.hpp"

namespace contactgeo {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  [[nodiscard]] std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  using K = Expr::Kind;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  [[noreturn]] void fail_eof() const {
    if (!open_parens_.empty()) throw ParseError("unbalanced parenthesis", open_parens_.back());
    throw ParseError("unexpected end of input", pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  void close_paren() {
    skip_space();
    if (pos_ >= text_.size()) fail_eof();
    if (text_[pos_] != ')') fail("expected ')'");
    ++pos_;
    open_parens_.pop_back();
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::raw(K::Add, lhs, term());
      } else if (accept('-')) {
        lhs = Expr::raw(K::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::raw(K::Mul, lhs, factor());
      } else if (accept('/')) {
        lhs = Expr::raw(K::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  Expr factor() {
    Expr b = base();
    if (accept('^')) {
      return Expr::raw(K::Pow, b, Expr::constant(0.0), signed_rational());
    }
    return b;
  }

  std::int64_t integer() {
    skip_space();
    if (pos_ >= text_.size()) fail_eof();
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first) fail("expected integer");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  Rational signed_rational() {
    skip_space();
    if (pos_ >= text_.size()) fail_eof();
    const bool wrapped = text_[pos_] == '(';
    if (wrapped) {
      open_parens_.push_back(pos_);
      ++pos_;
    }
    const bool negative = accept('-');
    std::int64_t num = integer();
    std::int64_t den = 1;
    if (accept('/')) {
      const std::size_t at = pos_;
      den = integer();
      if (den == 0) throw ParseError("zero denominator in exponent", at);
    }
    if (wrapped) close_paren();
    return {negative ? -num : num, den};
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits();
      } else {
        pos_ = save;
      }
    }
    const std::string lexeme(text_.substr(start, pos_ - start));
    if (lexeme == ".") throw ParseError("malformed number", start);
    return Expr::constant(std::strtod(lexeme.c_str(), nullptr));
  }

  Expr base() {
    skip_space();
    if (pos_ >= text_.size()) fail_eof();
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '-') {
      ++pos_;
      return Expr::raw(K::Neg, base());
    }
    if (c == '(') {
      open_parens_.push_back(pos_);
      ++pos_;
      Expr inner = expr();
      close_paren();
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string ident(text_.substr(start, pos_ - start));
      if (!peek('(')) return Expr::variable(ident);
      K kind;
      if (ident == "exp") {
        kind = K::Exp;
      } else if (ident == "log") {
        kind = K::Log;
      } else if (ident == "sin") {
        kind = K::Sin;
      } else if (ident == "cos") {
        kind = K::Cos;
      } else {
        throw ParseError("unknown function '" + ident + "'", start);
      }
      open_parens_.push_back(pos_);
      ++pos_;
      Expr arg = expr();
      close_paren();
      return Expr::raw(kind, arg);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::size_t> open_parens_;
};

}  // namespace detail

/// Parses text into the literal syntax tree (no folding).
inline Expr parse(std::string_view text) { return detail::Parser(text).parse(); }

}  // namespace contactgeo
