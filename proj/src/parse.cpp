#include "ratode/parse.hpp"

#include <cctype>
#include <string>

#include "ratode/algebra.hpp"
#include "ratode/error.hpp"

namespace ratode {

namespace {

class Parser {
 public:
  Parser(std::string_view s, std::size_t base) : s_(s), base_(base) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("operator or end of input");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t base_ = 0;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& expected) const {
    std::string near = pos_ < s_.size() ? "'" + std::string(s_.substr(pos_, 12)) + "'" : "end of input";
    throw Error(ErrorCode::ParseError,
                "at offset " + std::to_string(base_ + pos_) + ": expected " + expected + ", found " + near);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("'") + c + "'");
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_ || std::isdigit(static_cast<unsigned char>(s_[start]))) {
      pos_ = start;
      fail("identifier");
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  void expect_x() {
    std::size_t at = pos_;
    if (identifier() != "x") {
      pos_ = at;
      fail("'x'");
    }
  }

  // integer-valued constant expression
  int integer(const Expr& e, std::size_t at) {
    Rational v;
    if (e.is_const()) {
      v = e.value();
    } else {
      const RatFunc& r = rational_form(e);
      if (!r.num.is_constant() || !r.den.is_constant()) {
        pos_ = at;
        fail("integer");
      }
      v = r.num.constant_value() / r.den.constant_value();
    }
    if (v.get_den() != 1 || !v.get_num().fits_sint_p()) {
      pos_ = at;
      fail("integer");
    }
    return static_cast<int>(v.get_num().get_si());
  }

  Rational constant(const Expr& e, std::size_t at) {
    const RatFunc& r = rational_form(e);
    if (!r.num.is_constant() || !r.den.is_constant()) {
      pos_ = at;
      fail("rational constant");
    }
    return r.num.constant_value() / r.den.constant_value();
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+'))
        terms.push_back(term());
      else if (accept('-'))
        terms.push_back(fold_neg(term()));
      else
        break;
    }
    return Expr::add(std::move(terms));
  }

  static Expr fold_neg(const Expr& e) {
    if (e.is_const()) return Expr(Rational(-e.value()));
    return Expr::neg(e);
  }

  Expr term() {
    std::vector<Expr> factors{unary()};
    for (;;) {
      if (accept('*')) {
        factors.push_back(unary());
      } else if (accept('/')) {
        std::size_t at = pos_;
        Expr d = unary();
        Expr n = Expr::mul(std::move(factors));
        if (d.is_zero_literal()) {
          pos_ = at;
          fail("nonzero divisor");
        }
        if (n.is_const() && d.is_const())
          factors = {Expr(Rational(n.value() / d.value()))};
        else
          factors = {Expr::div(n, d)};
      } else {
        break;
      }
    }
    return Expr::mul(std::move(factors));
  }

  Expr unary() {
    if (accept('-')) return fold_neg(unary());
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = postfix();
    if (!accept('^')) return base;
    skip_ws();
    std::size_t at = pos_;
    Expr ex;
    if (accept('(')) {
      ex = expr();
      expect(')');
    } else {
      bool neg = accept('-');
      ex = number();
      if (neg) ex = fold_neg(ex);
    }
    return Expr::pow(base, integer(ex, at));
  }

  Expr postfix() {
    skip_ws();
    std::size_t at = pos_;
    Expr e = primary();
    int primes = 0;
    while (accept('\'')) ++primes;
    if (primes == 0) return e;
    if (e.kind() != ExprKind::Fn) {
      pos_ = at;
      fail("function name before prime");
    }
    return Expr::fn(e.name(), e.order() + primes);
  }

  Expr number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (start == pos_) fail("number");
    try {
      return Expr(parse_rational(s_.substr(start, pos_ - start)));
    } catch (const Error&) {
      pos_ = start;
      fail("number");
    }
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("operand");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) fail("operand");
    std::string id = identifier();
    if (id == "x") return Expr::x();
    if (id == "y") return Expr::y();
    if (id == "ln" || id == "log" || id == "arctan" || id == "exp") {
      expect('(');
      Expr a = expr();
      expect(')');
      if (id == "arctan") return Expr::arctan(a);
      if (id == "exp") return Expr::exp(a);
      return Expr::ln(a);
    }
    if (id == "diff") {
      expect('(');
      Expr a = expr();
      expect(',');
      expect_x();
      int k = 1;
      if (accept(',')) {
        skip_ws();
        std::size_t at = pos_;
        k = integer(expr(), at);
        if (k < 0) {
          pos_ = at;
          fail("nonnegative order");
        }
      }
      expect(')');
      if (a.kind() == ExprKind::Fn) return Expr::fn(a.name(), a.order() + k);
      return diff(a, k);
    }
    if (id == "int") {
      expect('(');
      Expr g = expr();
      expect(',');
      expect_x();
      Rational anchor(0);
      if (accept(',')) {
        skip_ws();
        std::size_t at = pos_;
        anchor = constant(expr(), at);
      }
      expect(')');
      return Expr::integral(g, anchor);
    }
    if (id == "param") {
      expect('(');
      std::string n = identifier();
      expect(')');
      return Expr::param(n);
    }
    // unknown function, optionally written a(x)
    std::size_t save = pos_;
    if (accept('(')) {
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == 'x') {
        std::size_t at = pos_;
        if (identifier() == "x" && accept(')')) return Expr::fn(id);
        pos_ = at;
      }
      pos_ = save;
      fail("'(x)' after function name");
    }
    return Expr::fn(id);
  }
};

}  // namespace

Expr parse_expr(std::string_view text, std::size_t offset) { return Parser(text, offset).parse(); }

}  // namespace ratode
