#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ratode/algebra.hpp"
#include "ratode/eval.hpp"
#include "ratode/ode.hpp"
#include "ratode/structure.hpp"

namespace ratode {

enum class CaseKind { Riccati, AbelA, UC1, UC2 };

std::string case_name(CaseKind k);
CaseKind parse_case(const std::string& s);

/// name^(order) := rhs, as text in the expression grammar.
struct CaseFormula {
  std::string name;
  int order = 0;
  std::string rhs;
};

struct CaseDefinition {
  CaseKind kind;
  std::vector<CaseFormula> assignments;  // on the structure's unknowns
  std::vector<CaseFormula> conditions;   // on X0..X4, Y0..Y2
  std::vector<std::string> restrictions; // each asserted != 0
};

const CaseDefinition& case_definition(CaseKind k);

/// Assignments and conditions of a case as one substitution.
Substitution case_substitution(const CaseDefinition& d);

/// ODE coefficients of dy/dx = (X4 y^4 + ... + X0)/(Y2 y^2 + Y1 y + Y0).
struct Coefficients {
  std::array<Expr, 5> X{};
  std::array<Expr, 3> Y{Expr(1), Expr(0), Expr(0)};

  static Coefficients from_ode(const OdeSpec& ode);
  /// Keeps the representation as given; the case formulas are not invariant
  /// under rescaling numerator and denominator by a function of x.
  static Coefficients from_ratio(const RatY& f);
  /// Raw {-ζx, ζy} of a concrete structure.
  static Coefficients from_structure(const Structure& s);
  Substitution substitution() const;
};

struct CaseOptions {
  Bindings bindings;               // for symbolic coefficients or particulars
  std::vector<double> sample_xs;   // empty: chosen automatically
  std::optional<Rational> anchor;  // lower limit of formal integrals
  double tol = 1e-8;
};

struct ConditionResult {
  std::string id;
  Expr residual;            // normalized residual after substitution
  bool exact = false;       // residual decided symbolically
  double residual_num = 0;  // max |residual| over the samples
  double at = 0;            // arg-max sample
  bool holds = false;

  nlohmann::json to_json() const;
};

/// Residual of a condition (an expression that must vanish) under the
/// coefficient substitution. Exact when the residual is a rational function
/// of x; otherwise judged numerically against `tol`.
ConditionResult check_condition(const Expr& cond, const Substitution& coeffs, const Bindings& b,
                                const std::vector<double>& xs, double tol = 1e-8);

struct CaseReport {
  CaseKind kind;
  std::vector<ConditionResult> conditions;
  std::vector<Expr> restrictions;
  std::vector<std::pair<std::string, Expr>> assignments;
  std::optional<Expr> zeta;
  std::vector<Expr> formal_integrals;
  std::vector<double> sample_xs;

  bool conditions_hold() const;
  nlohmann::json to_json() const;
};

struct GeneralSolution {
  Expr zeta;
  std::string constant_name = "c";
  Bindings bindings;  // numeric particulars the solution refers to
  CaseReport report;
};

struct ConditionReport {
  CaseReport report;
};

struct NeedsSecondOrderSolution {
  Expr equation;  // linear second-order ODE in a2, normalized, = 0
  CaseReport report;
};

using CaseResult = std::variant<GeneralSolution, ConditionReport, NeedsSecondOrderSolution>;

/// A particular solution supplied either in closed form or numerically.
struct Particular {
  std::optional<Expr> expr;
  FunctionBinding fn;

  static Particular of(Expr e) { return Particular{std::move(e), {}}; }
  static Particular numeric(FunctionBinding f) { return Particular{std::nullopt, std::move(f)}; }
};

CaseResult abelA_solve(const Coefficients& c, const CaseOptions& opt = {});
CaseResult uc1_solve(const Coefficients& c, const CaseOptions& opt = {});
CaseResult uc2_solve(const Coefficients& c, const std::optional<Particular>& a2,
                     const CaseOptions& opt = {});

struct RiccatiParticulars {
  std::optional<Particular> b0;  // solves b0' = -X0 + X1 b0 - X2 b0^2
  std::optional<Particular> a0;  // solves the linear second-order equation
};

/// b1 is pinned to 1; missing particulars are searched with a polynomial
/// ansatz of degree <= 2.
CaseResult riccati_case(const Coefficients& c, const RiccatiParticulars& parts = {},
                        const CaseOptions& opt = {});

CaseResult run_case(CaseKind k, const Coefficients& c, const CaseOptions& opt = {},
                    const std::optional<Particular>& a2 = std::nullopt,
                    const RiccatiParticulars& parts = {});

const CaseReport& report_of(const CaseResult& r);

}  // namespace ratode
