#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ratode/expr.hpp"
#include "ratode/poly.hpp"

namespace ratode {

/// Quotient of polynomials in atoms. `den` is never zero.
struct RatFunc {
  Poly num;
  Poly den{Rational(1)};

  RatFunc() = default;
  RatFunc(Poly n) : num(std::move(n)) {}
  RatFunc(Poly n, Poly d);

  bool is_zero() const { return num.is_zero(); }
  bool is_polynomial() const { return den.is_one(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a);
};

RatFunc pow(const RatFunc& r, int e);

/// Cheap cleanup: constant denominators folded, exact division tried,
/// monomial and rational contents removed. No polynomial gcd.
RatFunc reduce(RatFunc r);

/// Canonical form: gcd-cancelled, integer-primitive, denominator with positive
/// leading coefficient (or folded into the numerator when constant).
RatFunc canonicalize(const RatFunc& r);

enum class Var { X, Y };

/// Rational form of an expression, computed once per node.
const RatFunc& rational_form(const Expr& e);

/// Canonical expression for an already canonicalized rational function.
Expr to_expr(const RatFunc& canonical);

Expr normalize(const Expr& e);

/// True iff e is zero under ring axioms with atoms treated as independent.
bool is_zero(const Expr& e);
bool is_zero(const RatFunc& r);

RatFunc derivative(const RatFunc& r, Var v = Var::X);
Expr diff(const Expr& e, int order = 1);
Expr diff_y(const Expr& e, int order = 1);

/// `name^(order) := rhs`. Higher derivatives of `name` are rewritten with
/// derivatives of `rhs`; order 0 is a plain substitution.
struct Rule {
  std::string name;
  int order = 0;
  Expr rhs;
};

struct Substitution {
  std::vector<Rule> rules;
  std::map<std::string, Expr> params;

  Substitution& set(std::string name, Expr rhs) {
    rules.push_back({std::move(name), 0, std::move(rhs)});
    return *this;
  }
  Substitution& rule(std::string name, int order, Expr rhs) {
    rules.push_back({std::move(name), order, std::move(rhs)});
    return *this;
  }
  Substitution& param(std::string name, Expr value) {
    params[std::move(name)] = std::move(value);
    return *this;
  }
  bool empty() const { return rules.empty() && params.empty(); }
};

/// Applies the substitution to a fixpoint. Rules must be acyclic.
RatFunc substitute(const RatFunc& r, const Substitution& s);
Expr substitute(const Expr& e, const Substitution& s);

/// (name, derivative order) of every unknown function occurrence, including
/// occurrences inside transcendental atoms.
std::set<std::pair<std::string, int>> function_occurrences(const Expr& e);
std::set<std::pair<std::string, int>> function_occurrences(const RatFunc& r);
std::set<std::string> param_names(const Expr& e);
bool depends_on_y(const Expr& e);
bool depends_on_x(const Expr& e);

/// Highest derivative order of `name` in e, or -1 when absent.
int highest_order(const Expr& e, const std::string& name);

/// Numerator of the canonical form made primitive with positive leading
/// coefficient: the normal form of the relation e = 0.
Expr equation_normal_form(const Expr& e);

}  // namespace ratode
