#pragma once

#include <string>
#include <string_view>

#include "ratode/algebra.hpp"
#include "ratode/polyy.hpp"

namespace ratode {

/// dy/dx = P(x,y)/Q(x,y) with P, Q polynomial in y. Coefficient views:
/// X_k is the y^k coefficient of P, Y_k that of Q (zero beyond the degree).
struct OdeSpec {
  RatY f;

  Expr X(int k) const { return f.num.coeff(k); }
  Expr Y(int k) const { return f.den.coeff(k); }
  int num_degree() const { return f.num.degree(); }
  int den_degree() const { return f.den.degree(); }

  /// Binds the names X0..X4, Y0..Y2 to this ODE's coefficients (for
  /// evaluating formulas written in those names).
  Substitution coefficient_substitution() const;

  /// Unnormalized ODE with unknown coefficient functions X0..X{n}, Y0..Y{m};
  /// m = 0 means Q = 1.
  static OdeSpec generic(int n, int m);
  static OdeSpec from_ratio(const RatY& f);

  std::string to_string() const;
};

/// Parses "dy/dx = <expr>" (the prefix is optional). Throws ParseError with
/// the offset, or NotPolynomialInY.
OdeSpec parse_ode(std::string_view text);

}  // namespace ratode
