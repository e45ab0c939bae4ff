#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ratode/error.hpp"
#include "ratode/matcher.hpp"
#include "ratode/parse.hpp"

using namespace ratode;

namespace {

Expr P(const std::string& s) { return parse_expr(s); }
PolyY Y(std::vector<const char*> cs) {
  std::vector<Expr> v;
  for (auto c : cs) v.push_back(P(c));
  return PolyY(std::move(v));
}

Structure riccati() { return Structure::rational(Y({"a0", "a1"}), Y({"b0", "b1"})); }
Structure abel() {
  Structure s = Structure::rational(Y({"b1", "a1"}), Y({"1"}));
  s.with_log(Y({"b2", "a2"}), Y({"1"}));
  return s;
}
Structure quadratic() { return Structure::rational(Y({"a0", "a1", "a2"}), Y({"b0", "b1", "b2"})); }

template <std::size_t N>
void expect_golden(const DiffSystem& sys, const char* const (&fixture)[N]) {
  ASSERT_EQ(sys.equations.size(), N);
  for (std::size_t i = 0; i < N; ++i)
    EXPECT_TRUE(structurally_equal(sys.equations[i], equation_normal_form(P(fixture[i]))))
        << i << ": " << to_string(sys.equations[i]);
}

bool satisfied(const DiffSystem& sys, const Substitution& sub) {
  for (const auto& e : sys.equations)
    if (!is_zero(substitute(e, sub))) return false;
  return true;
}

}  // namespace

TEST(ParseOde, ReadsCoefficients) {
  OdeSpec a = parse_ode("dy/dx = (y^2)/(1)");
  EXPECT_TRUE(is_zero(a.X(2) - 1));
  EXPECT_TRUE(is_zero(a.X(1)) && is_zero(a.X(0)));
  EXPECT_EQ(a.den_degree(), 0);

  OdeSpec b = parse_ode("dy/dx = (x*y^2 + y + 1)/(y + x)");
  EXPECT_TRUE(is_zero(b.X(2) - P("x")));
  EXPECT_TRUE(is_zero(b.X(1) - 1));
  EXPECT_TRUE(is_zero(b.X(0) - 1));
  EXPECT_TRUE(is_zero(b.Y(1) - 1));
  EXPECT_TRUE(is_zero(b.Y(0) - P("x")));
}

TEST(ParseOde, Errors) {
  try {
    parse_ode("dy/dx = (ln(y))/(1)");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPolynomialInY);
  }
  try {
    parse_ode("dy/dx = (y^2 +)/(1)");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("offset 14"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_ode("dy/dt = y"), Error);
}

TEST(MatchStrict, RiccatiGolden) { expect_golden(match_strict(riccati(), OdeSpec::generic(2, 0)), fixtures::kRiccatiSystem); }

TEST(MatchStrict, AbelGolden) { expect_golden(match_strict(abel(), OdeSpec::generic(2, 1)), fixtures::kAbelSystem); }

TEST(MatchStrict, QuadraticGolden) {
  expect_golden(match_strict(quadratic(), OdeSpec::generic(4, 2)), fixtures::kUcSystem);
}

TEST(MatchStrict, LinearStructureAgainstZero) {
  DiffSystem sys = match_strict(Structure::rational(Y({"a0", "a1"}), Y({"1"})), parse_ode("dy/dx = 0"));
  // cross-multiplied scale: a1 is not pinned
  ASSERT_EQ(sys.equations.size(), 2u);
  EXPECT_TRUE(structurally_equal(sys.equations[0], P("a1'")));
  EXPECT_TRUE(structurally_equal(sys.equations[1], P("a0'")));
}

TEST(MatchStrict, AbelForwardInstance) {
  OdeSpec ode = parse_ode("dy/dx = (-(y^2+y))/(x*y + x + 1)");
  EXPECT_TRUE(is_zero(ode.X(2) + 1) && is_zero(ode.X(1) + 1) && is_zero(ode.X(0)));
  EXPECT_TRUE(is_zero(ode.Y(1) - P("x")) && is_zero(ode.Y(0) - P("x + 1")));
  DiffSystem sys = match_strict(abel(), ode);
  Substitution s;
  s.set("a1", P("x")).set("b1", Expr(0)).set("a2", Expr(1)).set("b2", Expr(1));
  EXPECT_TRUE(satisfied(sys, s));
  // the printed system with the coefficients read off
  DiffSystem g = match_strict(abel(), OdeSpec::generic(2, 1));
  ASSERT_EQ(g.equations.size(), sys.equations.size());
  for (std::size_t i = 0; i < g.equations.size(); ++i)
    EXPECT_TRUE(structurally_equal(equation_normal_form(substitute(g.equations[i], ode.coefficient_substitution())),
                                   sys.equations[i]));
}

TEST(MatchStrict, DegreeMismatch) {
  try {
    match_strict(riccati(), parse_ode("dy/dx = y^3"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeMismatch);
  }
}

TEST(MatchProjective, RiccatiSquare) {
  DiffSystem sys = match_projective(riccati(), parse_ode("dy/dx = y^2"));
  Substitution s;
  s.set("a1", P("x")).set("a0", Expr(1)).set("b1", Expr(1)).set("b0", Expr(0));
  EXPECT_TRUE(satisfied(sys, s));
  ASSERT_EQ(sys.inequations.size(), 1u);
  EXPECT_FALSE(is_zero(substitute(sys.inequations[0], s)));
}

TEST(MatchProjective, StrictSolutionsSatisfyProjective) {
  OdeSpec ode = parse_ode("dy/dx = (-(y^2+y))/(x*y + x + 1)");
  Substitution s;
  s.set("a1", P("x")).set("b1", Expr(0)).set("a2", Expr(1)).set("b2", Expr(1));
  EXPECT_TRUE(satisfied(match_strict(abel(), ode), s));
  EXPECT_TRUE(satisfied(match_projective(abel(), ode), s));
}

TEST(MatchProjective, ScaleInvariant) {
  Instance inst = random_instance(quadratic(), 5, 1);
  RatY f = build_f(inst.structure);
  OdeSpec plain{f};
  OdeSpec scaled{RatY(f.num.scaled(Expr(7)), f.den)};
  DiffSystem a = match_projective(quadratic(), plain);
  DiffSystem b = match_projective(quadratic(), scaled);
  EXPECT_TRUE(satisfied(a, inst.substitution()));
  EXPECT_FALSE(satisfied(b, inst.substitution()));
  OdeSpec rescaled{RatY(f.num.scaled(Expr(7)), f.den.scaled(Expr(7)))};
  EXPECT_TRUE(satisfied(match_projective(quadratic(), rescaled), inst.substitution()));
}

TEST(MatchProjective, RoundTripSoundness) {
  for (const char* prof : {"rational:1,1", "rational:1,0+log:1,0", "rational:2,1", "log:1,1", "rational:0,1+arctan:1,0"}) {
    Structure g = generic_structure(DegreeProfile::parse(prof));
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      Instance inst = random_instance(g, seed, 1);
      DiffSystem sys = match_projective(g, OdeSpec{build_f(inst.structure)});
      EXPECT_TRUE(satisfied(sys, inst.substitution())) << prof << " seed " << seed;
    }
  }
}

TEST(DiffSystem, JsonShape) {
  DiffSystem sys = match_strict(riccati(), OdeSpec::generic(2, 0));
  auto j = sys.to_json();
  EXPECT_EQ(j["mode"], "strict");
  EXPECT_EQ(j["equations"].size(), 3u);
  EXPECT_EQ(j["provenance"][0]["power"], 2);
  EXPECT_EQ(j["provenance"][0]["side"], "num");
  EXPECT_EQ(j["unknowns"], nlohmann::json({"a0", "a1", "b0", "b1"}));
  EXPECT_EQ(j["coefficients"], nlohmann::json({"X0", "X1", "X2"}));
  EXPECT_EQ(j.dump(), match_strict(riccati(), OdeSpec::generic(2, 0)).to_json().dump());
}
