#pragma once

#include <optional>
#include <vector>

#include "ratode/algebra.hpp"
#include "ratode/expr.hpp"

namespace ratode {

/// Polynomial in y with expression coefficients in x, lowest power first.
/// Coefficients are kept normalized.
class PolyY {
 public:
  PolyY() = default;
  explicit PolyY(std::vector<Expr> coeffs);
  static PolyY constant(const Expr& c) { return PolyY({c}); }
  static PolyY monomial(const Expr& c, int power);

  /// Throws NotPolynomialInY when e is not polynomial in y.
  static PolyY from_expr(const Expr& e);
  /// From a rational function whose denominator is y-free.
  static PolyY from_rational(const RatFunc& r);

  const std::vector<Expr>& coeffs() const { return c_; }
  /// Coefficient of y^k (zero beyond the stored range).
  Expr coeff(int k) const;
  /// Degree of the trimmed polynomial; -1 for zero.
  int degree() const;
  /// Length of the stored coefficient list minus one.
  int stored_degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return degree() < 0; }
  PolyY trim() const;

  Expr to_expr() const;
  RatFunc rational() const;

  PolyY operator+(const PolyY& o) const;
  PolyY operator-(const PolyY& o) const;
  PolyY operator*(const PolyY& o) const;
  PolyY operator-() const;
  PolyY scaled(const Expr& c) const;

  PolyY diff_x() const;
  PolyY diff_y() const;

  friend bool operator==(const PolyY& a, const PolyY& b);

 private:
  std::vector<Expr> c_;
};

/// Quotient iff `d` divides `p` with a remainder that normalizes to zero.
std::optional<PolyY> try_divide(const PolyY& p, const PolyY& d);
/// Throws DivisionInexact otherwise.
PolyY divide_exact(const PolyY& p, const PolyY& d);

/// Ratio of y-polynomials; `den` is never the zero polynomial.
struct RatY {
  PolyY num;
  PolyY den{std::vector<Expr>{Expr(1)}};

  RatY() = default;
  RatY(PolyY n, PolyY d);

  /// Throws NotPolynomialInY unless e is a ratio of polynomials in y.
  static RatY from_expr(const Expr& e);
  static RatY from_rational(const RatFunc& r);

  Expr to_expr() const;
  RatFunc rational() const;
};

/// Common factors removed (multivariate gcd of the cleared numerator and
/// denominator), integer-primitive, and signed so that the highest
/// y-coefficient of the denominator has a positive leading term.
RatY normalize_rat(const RatY& r);

/// Same normalization applied to a rational function in x and y.
RatY normalized_ratio(const RatFunc& r);

}  // namespace ratode
