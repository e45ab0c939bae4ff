#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "ratode/cases.hpp"
#include "ratode/error.hpp"
#include "ratode/parse.hpp"
#include "ratode/verifier.hpp"

using namespace ratode;

namespace {

Expr P(const std::string& s) { return parse_expr(s); }
PolyY Y(std::vector<const char*> cs) {
  std::vector<Expr> v;
  for (auto c : cs) v.push_back(P(c));
  return PolyY(std::move(v));
}

RatY ratio(const Coefficients& c) {
  return RatY(PolyY(std::vector<Expr>(c.X.begin(), c.X.end())),
              PolyY(std::vector<Expr>(c.Y.begin(), c.Y.end())));
}

template <class T>
T expect(const CaseResult& r) {
  const T* v = std::get_if<T>(&r);
  if (!v) throw std::runtime_error("unexpected case result: " + report_of(r).to_json().dump());
  return *v;
}

// Checks ζx + f ζy ≈ 0 on a grid clear of x = 0.
double numeric_pde(const GeneralSolution& g, const Coefficients& c) {
  std::vector<std::pair<double, double>> pts;
  for (double x : {0.21, 0.37, 0.55, 0.72})
    for (double y : {-0.6, 0.3, 1.4}) pts.emplace_back(x, y);
  return pde_residual_numeric(g.zeta, ratio(c), pts, g.bindings).first;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

template <std::size_t N>
void expect_case_solves(CaseKind k, const char* const (&system)[N]) {
  Substitution s = case_substitution(case_definition(k));
  for (std::size_t i = 0; i < N; ++i)
    EXPECT_TRUE(is_zero(substitute(P(system[i]), s))) << case_name(k) << " equation " << i;
}

Coefficients abel_instance() {
  Structure s = Structure::rational(Y({"0", "x"}), Y({"1"}));
  s.with_log(Y({"1", "1"}), Y({"1"}));
  return Coefficients::from_structure(s);
}

Coefficients uc1_instance() {
  return Coefficients::from_structure(Structure::rational(Y({"x", "1"}), Y({"1", "x", "1"})));
}

Coefficients uc2_instance() {
  return Coefficients::from_structure(Structure::rational(Y({"x", "0", "1"}), Y({"0", "1", "x"})));
}

}  // namespace

TEST(CaseDefinition, AbelSolvesMatchedSystem) { expect_case_solves(CaseKind::AbelA, fixtures::kAbelSystem); }
TEST(CaseDefinition, Uc1SolvesMatchedSystem) { expect_case_solves(CaseKind::UC1, fixtures::kUcSystem); }
TEST(CaseDefinition, Uc2SolvesMatchedSystem) { expect_case_solves(CaseKind::UC2, fixtures::kUcSystem); }
TEST(CaseDefinition, RiccatiSolvesMatchedSystem) {
  Substitution s = case_substitution(case_definition(CaseKind::Riccati));
  for (auto e : fixtures::kRiccatiSystem) EXPECT_TRUE(is_zero(substitute(P(e), s))) << e;
}

TEST(CaseDefinition, NamesRoundTrip) {
  for (auto k : {CaseKind::Riccati, CaseKind::AbelA, CaseKind::UC1, CaseKind::UC2})
    EXPECT_EQ(parse_case(case_name(k)), k);
  EXPECT_EQ(code_of([] { parse_case("abelB"); }), ErrorCode::InvalidArgument);
}

TEST(CaseDefinition, FromStructureKeepsRawRatio) {
  Coefficients c = abel_instance();
  // ζ = x y + ln(y + 1): f = -y(y+1)/(x y + x + 1)
  EXPECT_TRUE(is_zero(c.X[0]));
  EXPECT_TRUE(is_zero(c.X[1] + 1));
  EXPECT_TRUE(is_zero(c.X[2] + 1));
  EXPECT_TRUE(is_zero(c.Y[0] - P("x + 1")));
  EXPECT_TRUE(is_zero(c.Y[1] - P("x")));
}

TEST(AbelCase, ForwardInstanceSolves) {
  Coefficients c = abel_instance();
  const auto& g = expect<GeneralSolution>(abelA_solve(c));
  EXPECT_TRUE(g.report.conditions_hold());
  EXPECT_TRUE(is_zero(pde_residual(g.zeta, ratio(c))));
}

TEST(AbelCase, PerturbedCoefficientFailsCondition) {
  Coefficients c = abel_instance();
  c.X[0] = normalize(c.X[0] + Expr::x());
  const auto& r = expect<ConditionReport>(abelA_solve(c));
  ASSERT_EQ(r.report.conditions.size(), 1u);
  EXPECT_EQ(r.report.conditions[0].id, "abelA.Y0''");
  EXPECT_FALSE(r.report.conditions[0].holds);
  EXPECT_TRUE(r.report.conditions[0].exact);
  EXPECT_FALSE(r.report.zeta.has_value());
}

TEST(AbelCase, VanishingY1IsRejected) {
  Coefficients c = abel_instance();
  c.Y[1] = Expr(0);
  EXPECT_EQ(code_of([&] { abelA_solve(c); }), ErrorCode::RestrictionViolated);
}

TEST(AbelCase, SymbolicCoefficientsNeedBindings) {
  Coefficients c = abel_instance();
  c.X[1] = Expr::fn("h");
  CaseOptions opt;
  opt.bindings.bind("h", P("-1"));
  const auto& g = expect<GeneralSolution>(abelA_solve(c, opt));
  EXPECT_LT(numeric_pde(g, abel_instance()), 1e-8);
}

TEST(Uc1Case, ForwardInstanceSolves) {
  Coefficients c = uc1_instance();
  const auto& g = expect<GeneralSolution>(uc1_solve(c));
  EXPECT_TRUE(g.report.conditions_hold());
  EXPECT_EQ(g.report.formal_integrals.size(), 3u);
  EXPECT_LT(numeric_pde(g, c), 1e-7);
}

TEST(Uc1Case, QuarticTermIsRejected) {
  Coefficients c = uc1_instance();
  c.X[4] = Expr::x();
  const auto& r = expect<ConditionReport>(uc1_solve(c));
  bool x4_failed = false;
  for (const auto& cond : r.report.conditions)
    if (cond.id == "uc1.X4") x4_failed = !cond.holds;
  EXPECT_TRUE(x4_failed);
}

TEST(Uc1Case, VanishingY1IsRejected) {
  Coefficients c = uc1_instance();
  c.Y[1] = Expr(0);
  EXPECT_EQ(code_of([&] { uc1_solve(c); }), ErrorCode::RestrictionViolated);
}

TEST(Uc2Case, ForwardInstanceWithSuppliedA2) {
  Coefficients c = uc2_instance();
  const auto& g = expect<GeneralSolution>(uc2_solve(c, Particular::of(Expr(1))));
  EXPECT_TRUE(g.report.conditions_hold());
  EXPECT_LT(numeric_pde(g, c), 1e-7);
}

TEST(Uc2Case, MissingA2AsksForSecondOrderSolution) {
  Coefficients c = uc2_instance();
  const auto& n = expect<NeedsSecondOrderSolution>(uc2_solve(c, std::nullopt));
  EXPECT_EQ(highest_order(n.equation, "a2"), 2);
  // the known particular solves it
  EXPECT_TRUE(is_zero(substitute(n.equation, Substitution().set("a2", Expr(1)))));
}

TEST(Uc2Case, BadA2IsRejected) {
  Coefficients c = uc2_instance();
  EXPECT_EQ(code_of([&] { uc2_solve(c, Particular::of(P("x^3"))); }), ErrorCode::SuppliedA2Invalid);
  EXPECT_EQ(code_of([&] { uc2_solve(c, Particular::of(Expr(0))); }), ErrorCode::RestrictionViolated);
}

TEST(Uc2Case, NumericA2Binding) {
  Coefficients c = uc2_instance();
  auto one = [](int order, double) { return order == 0 ? 1.0 : 0.0; };
  const auto& g = expect<GeneralSolution>(uc2_solve(c, Particular::numeric(one)));
  EXPECT_LT(numeric_pde(g, c), 1e-7);
}

TEST(RiccatiCase, SquareMinusOneWithSuppliedA0) {
  Coefficients c;
  c.X[2] = Expr(1);
  c.X[0] = Expr(-1);
  RiccatiParticulars parts;
  parts.a0 = Particular::of(Expr::exp(P("-2*x")));
  const auto& g = expect<GeneralSolution>(riccati_case(c, parts));
  EXPECT_TRUE(is_zero(pde_residual(g.zeta, ratio(c))));
}

TEST(RiccatiCase, SquareMinusOneWithoutA0Fails) {
  Coefficients c;
  c.X[2] = Expr(1);
  c.X[0] = Expr(-1);
  EXPECT_EQ(code_of([&] { riccati_case(c); }), ErrorCode::ParticularSolutionInvalid);
}

TEST(RiccatiCase, SquarePlusOneWithNumericB0) {
  Coefficients c;
  c.X[2] = Expr(1);
  c.X[0] = Expr(1);
  RiccatiParticulars parts;
  parts.b0 = Particular::numeric([](int order, double x) {
    double t = std::tan(x), s2 = 1 + t * t;
    if (order == 0) return -t;
    if (order == 1) return -s2;
    return -2 * s2 * t;
  });
  parts.a0 = Particular::of(Expr(1));
  const auto& g = expect<GeneralSolution>(riccati_case(c, parts));
  EXPECT_LT(numeric_pde(g, c), 1e-8);
}

TEST(RiccatiCase, WrongParticularIsRejected) {
  Coefficients c;
  c.X[2] = Expr(1);
  c.X[0] = Expr(-1);
  RiccatiParticulars parts;
  parts.b0 = Particular::of(Expr(2));
  EXPECT_EQ(code_of([&] { riccati_case(c, parts); }), ErrorCode::ParticularSolutionInvalid);
}

TEST(RiccatiCase, PureSquareViolatesRestriction) {
  Coefficients c;
  c.X[2] = Expr(1);
  EXPECT_EQ(code_of([&] { riccati_case(c); }), ErrorCode::RestrictionViolated);
}

TEST(CaseReport, FormalIntegralsDifferentiateBack) {
  const auto& g = expect<GeneralSolution>(uc1_solve(uc1_instance()));
  for (const auto& i : g.report.formal_integrals) {
    ASSERT_EQ(i.kind(), ExprKind::Int);
    EXPECT_TRUE(is_zero(diff(i) - i.args()[0]));
  }
}

TEST(CaseReport, JsonShape) {
  Coefficients c = abel_instance();
  c.X[0] = normalize(c.X[0] + Expr::x());
  auto j = report_of(abelA_solve(c)).to_json();
  EXPECT_EQ(j["case"], "abelA");
  EXPECT_EQ(j["conditions"][0]["id"], "abelA.Y0''");
  EXPECT_FALSE(j["conditions"][0]["holds"].get<bool>());
  EXPECT_TRUE(j["zeta"].is_null());
  EXPECT_EQ(j["restrictions"].size(), 3u);
}
