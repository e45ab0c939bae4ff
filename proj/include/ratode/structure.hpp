#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ratode/polyy.hpp"

namespace ratode {

/// Degrees in y of the six blocks, plus which blocks are present.
struct DegreeProfile {
  int n_p1 = 0, n_q1 = 0, n_p2 = 0, n_q2 = 0, n_p3 = 0, n_q3 = 0;
  bool rational = true;
  bool log = false;
  bool arctan = false;

  int N() const { return n_p1 + n_q1 + n_p2 + n_q2 + n_p3 + n_q3; }

  /// "rational:1,1+log:1,0+arctan:0,1"; a block that is not listed is absent.
  static DegreeProfile parse(const std::string& text);
  std::string to_string() const;

  friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
};

/// ζ = p1/q1 + α ln(p2/q2) + β arctan(p3/q3), with F = identity.
struct Structure {
  PolyY p1;
  PolyY q1 = PolyY::constant(1);
  PolyY p2 = PolyY::constant(1);
  PolyY q2 = PolyY::constant(1);
  PolyY p3;
  PolyY q3 = PolyY::constant(1);
  Expr alpha = 1;
  Expr beta = 1;
  bool log_present = false;
  bool arctan_present = false;

  static Structure rational(PolyY p1, PolyY q1);
  Structure& with_log(PolyY p2, PolyY q2, Expr alpha = 1);
  Structure& with_arctan(PolyY p3, PolyY q3, Expr beta = 1);

  /// Throws ZeroDenominator when a required polynomial is zero.
  void validate() const;
  DegreeProfile profile() const;
  /// Names of unknown coefficient functions, sorted.
  std::vector<std::string> unknowns() const;
  Structure substituted(const Substitution& s) const;

  nlohmann::json to_json() const;
  static Structure from_json(const nlohmann::json& j);
};

/// Structure with one unknown function per coefficient. Rational block: p1 ->
/// a0.., q1 -> b0..; log block: p2 -> c0.., q2 -> d0..; arctan block: p3 ->
/// e0.., q3 -> g0... A q of degree zero is fixed to 1 (absorbed by joint scaling).
Structure generic_structure(const DegreeProfile& d);

/// Every profile with N <= max_n and at least one block, ordered by N.
std::vector<DegreeProfile> enumerate_profiles(int max_n);

Expr build_zeta(const Structure& s);

/// Cleared numerator and denominator of -ζx/ζy before normalization.
struct InducedParts {
  RatFunc nx;  // the ζx part
  RatFunc ny;  // the ζy part
};
InducedParts induced_parts(const Structure& s);

/// f = -ζx/ζy as a normalized ratio of y-polynomials. Throws
/// DegenerateStructure when ζy vanishes identically.
RatY build_f(const Structure& s);

/// f = -ζx/ζy for an arbitrary first integral candidate.
RatY f_from_zeta(const Expr& zeta);

struct DegreeBounds {
  int n_P_max = 0;
  int n_Q_max = -1;
  int total_params = 0;
  int free_params = 0;
};
DegreeBounds degree_bounds(const DegreeProfile& d);

/// Unknown coefficients replaced by random integer polynomials in x of degree
/// <= d; re-rolled (up to `max_tries`) until the leading coefficients of every
/// block and of the induced denominator are nonzero at sample points.
struct Instance {
  Structure structure;
  std::map<std::string, Expr> values;  // unknown -> chosen polynomial

  Substitution substitution() const;
};
Instance random_instance(const Structure& s, std::uint64_t seed, int d, int max_tries = 200);

/// Sample abscissae used by random_instance's nonvanishing checks.
const std::vector<double>& instance_sample_points();

}  // namespace ratode
