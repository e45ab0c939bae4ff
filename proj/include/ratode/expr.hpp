#pragma once

#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <vector>

#include "ratode/rational.hpp"

namespace ratode {

struct RatFunc;

enum class ExprKind {
  Const,
  X,
  Y,
  Fn,      // unknown function of x, with a derivative order
  Param,   // undetermined constant (x-derivative zero)
  Add,
  Mul,
  Pow,     // integer exponent stored in `order`
  Neg,
  Div,
  Ln,
  Arctan,
  Exp,
  Int,     // formal integral from `value` (anchor) to x of args[0]
};

class Expr;

struct ExprNode {
  ExprKind kind = ExprKind::Const;
  Rational value;
  double approx = 0;  // value as a double, for numeric evaluation
  std::string name;
  int order = 0;
  std::vector<Expr> args;

  // Lazily computed rational form; see algebra.hpp.
  mutable std::once_flag cache_once;
  mutable std::shared_ptr<const RatFunc> cache;
};

/// Immutable symbolic expression in x (and y for first integrals).
///
/// Construction is cheap and purely syntactic; `normalize` produces the
/// canonical form. Nodes are shared, so copies are O(1).
class Expr {
 public:
  Expr();
  Expr(int v);
  Expr(long v);
  Expr(long long v);
  Expr(const Rational& v);

  static Expr x();
  static Expr y();
  static Expr fn(std::string name, int order = 0);
  static Expr param(std::string name);
  static Expr ln(Expr arg);
  static Expr arctan(Expr arg);
  static Expr exp(Expr arg);
  static Expr integral(Expr integrand, Rational anchor = Rational(0));
  static Expr pow(Expr base, int exponent);
  /// Throws DivisionByZero when `den` is the literal zero constant.
  static Expr div(Expr num, Expr den);
  static Expr add(std::vector<Expr> terms);
  static Expr mul(std::vector<Expr> factors);
  static Expr neg(Expr e);

  ExprKind kind() const { return node_->kind; }
  const Rational& value() const { return node_->value; }
  const std::string& name() const { return node_->name; }
  int order() const { return node_->order; }
  const std::vector<Expr>& args() const { return node_->args; }
  const ExprNode& node() const { return *node_; }

  bool is_const() const { return kind() == ExprKind::Const; }
  bool is_zero_literal() const { return is_const() && sgn(value()) == 0; }
  bool is_one_literal() const { return is_const() && value() == 1; }

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }

  /// Build a node whose rational form is already known (used by normalize).
  static Expr with_cache(std::shared_ptr<ExprNode> node, std::shared_ptr<const RatFunc> rf);
  static Expr make(ExprKind kind, std::vector<Expr> args, Rational value = Rational(0),
                   std::string name = {}, int order = 0);

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;
};

/// Total structural order; 0 means structurally identical.
int compare(const Expr& a, const Expr& b);
inline bool structurally_equal(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

/// Text serialization in the documented grammar; parse_expr reads it back.
std::string to_string(const Expr& e);
/// Human-readable rendering: primes for derivatives, integrals as ∫_{a}^{x} ... dt.
std::string to_display(const Expr& e);

std::ostream& operator<<(std::ostream& os, const Expr& e);

}  // namespace ratode
