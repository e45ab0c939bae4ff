#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratode/expr.hpp"
#include "ratode/rational.hpp"

namespace ratode {

enum class AtomKind { Fn, Param, X, Y, Ln, Arctan, Exp, Int };

struct AtomData {
  AtomKind kind;
  std::string name;
  int order = 0;
  Expr arg;          // canonical argument for Ln/Arctan/Exp/Int
  Rational anchor;   // Int only
};

/// Indeterminate of the canonical polynomial ring. Transcendental atoms
/// (ln, arctan, exp, formal integrals) are opaque: no identities among them
/// are applied.
class Atom {
 public:
  static Atom x();
  static Atom y();
  static Atom fn(std::string name, int order);
  static Atom param(std::string name);
  static Atom ln(Expr canonical_arg);
  static Atom arctan(Expr canonical_arg);
  static Atom exp(Expr canonical_arg);
  static Atom integral(Expr canonical_integrand, Rational anchor);

  AtomKind kind() const { return d_->kind; }
  const std::string& name() const { return d_->name; }
  int order() const { return d_->order; }
  const Expr& arg() const { return d_->arg; }
  const Rational& anchor() const { return d_->anchor; }

  bool is_fn() const { return kind() == AtomKind::Fn; }
  bool is_param() const { return kind() == AtomKind::Param; }
  bool has_arg() const { return kind() >= AtomKind::Ln; }

  Expr to_expr() const;

  friend int compare(const Atom& a, const Atom& b);
  friend bool operator==(const Atom& a, const Atom& b) { return compare(a, b) == 0; }
  friend bool operator<(const Atom& a, const Atom& b) { return compare(a, b) < 0; }

 private:
  explicit Atom(std::shared_ptr<const AtomData> d) : d_(std::move(d)) {}
  std::shared_ptr<const AtomData> d_;
};

/// Power product; factors sorted by atom priority (compare ascending).
class Monomial {
 public:
  using Factor = std::pair<Atom, int>;

  Monomial() = default;
  explicit Monomial(std::vector<Factor> f);
  static Monomial of(const Atom& a, int e = 1);

  const std::vector<Factor>& factors() const { return f_; }
  bool is_one() const { return f_.empty(); }
  int degree_in(const Atom& a) const;
  int total_degree() const;

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  /// Requires divides(o, *this).
  Monomial divided_by(const Monomial& o) const;
  Monomial without(const Atom& a) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);

  friend int compare(const Monomial& a, const Monomial& b);

 private:
  std::vector<Factor> f_;
};

/// Lexicographic order, larger first.
struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
};

/// Sparse multivariate polynomial over Q in atoms.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational, MonomialGreater>;

  Poly() = default;
  explicit Poly(const Rational& c);
  static Poly atom(const Atom& a, int e = 1);
  static Poly term(const Monomial& m, const Rational& c);

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the unit monomial.
  Rational constant_value() const;
  bool is_one() const;

  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Rational& leading_coeff() const { return terms_.begin()->second; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly scaled(const Rational& c) const;
  Poly times_term(const Monomial& m, const Rational& c) const;
  void add_term(const Monomial& m, const Rational& c);

  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  friend int compare(const Poly& a, const Poly& b);

  /// Quotient iff `d` divides this exactly.
  std::optional<Poly> divide_exact(const Poly& d) const;

  bool contains(const Atom& a) const;
  int degree_in(const Atom& a) const;
  int total_degree() const;
  std::vector<Atom> atoms() const;
  /// Coefficients with respect to `a`, index = power.
  std::vector<Poly> coefficients_in(const Atom& a) const;
  static Poly from_coefficients(const Atom& a, const std::vector<Poly>& c);
  /// Formal partial derivative with respect to an atom.
  Poly partial(const Atom& a) const;

  /// Positive rational q with this/q having coprime integer coefficients.
  Rational rational_content() const;
  /// Divides by rational content and makes the leading coefficient positive.
  Poly unit_normal() const;
  Monomial monomial_content() const;

 private:
  Terms terms_;
};

Poly pow(const Poly& p, unsigned e);

/// Greatest common divisor over Q, normalized with unit_normal().
Poly gcd(const Poly& a, const Poly& b);

}  // namespace ratode
