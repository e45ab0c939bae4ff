#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "ratode/error.hpp"
#include "ratode/eval.hpp"
#include "ratode/parse.hpp"
#include "ratode/structure.hpp"

using namespace ratode;

namespace {

Expr P(const std::string& s) { return parse_expr(s); }
PolyY Y(std::vector<const char*> cs) {
  std::vector<Expr> v;
  for (auto c : cs) v.push_back(P(c));
  return PolyY(std::move(v));
}

bool same(const Expr& a, const Expr& b) { return is_zero(a - b); }

Structure riccati() { return Structure::rational(Y({"a0", "a1"}), Y({"b0", "b1"})); }

}  // namespace

TEST(PolyY, Arithmetic) {
  EXPECT_EQ(Y({"1", "1"}) * Y({"-1", "1"}), Y({"-1", "0", "1"}));
  EXPECT_EQ(Y({"0", "0", "a"}).diff_y(), Y({"0", "2*a"}));
  EXPECT_EQ(divide_exact(Y({"x", "x+1", "1"}), Y({"1", "1"})), Y({"x", "1"}));
  EXPECT_THROW(divide_exact(Y({"x", "1", "1"}), Y({"1", "1"})), Error);
}

TEST(PolyY, TrimAndDegree) {
  PolyY p = Y({"1", "x", "a - a"});
  EXPECT_EQ(p.stored_degree(), 2);
  EXPECT_EQ(p.degree(), 1);
  EXPECT_LE(p.trim().degree(), p.degree());
  EXPECT_EQ(p.trim().stored_degree(), 1);
}

TEST(PolyY, DegreeAdditivity) {
  PolyY p = Y({"a", "x", "b+1"});
  PolyY q = Y({"1", "x^2 - a"});
  EXPECT_EQ((p * q).degree(), p.degree() + q.degree());
}

TEST(PolyY, FromExprRejectsNonPolynomial) {
  EXPECT_THROW(PolyY::from_expr(P("ln(y)")), Error);
  EXPECT_THROW(PolyY::from_expr(P("1/y")), Error);
  EXPECT_EQ(PolyY::from_expr(P("x*y^2 + a/x")), Y({"a/x", "0", "x"}));
}

TEST(RatY, NormalizeRemovesCommonFactor) {
  RatY r(Y({"-1", "0", "1"}), Y({"a - a*x", "a"}));  // (y^2-1)/(a(y + 1 - x))
  RatY n = normalize_rat(RatY(Y({"-1", "0", "1"}) * Y({"x", "1"}), Y({"x", "1"}) * Y({"2"})));
  EXPECT_EQ(n.num, Y({"-1/2", "0", "1/2"}));
  EXPECT_EQ(n.den, Y({"1"}));
  EXPECT_THROW(RatY(Y({"1"}), Y({"0"})), Error);
}

TEST(BuildZeta, Examples) {
  EXPECT_TRUE(same(build_zeta(Structure::rational(Y({"0", "1"}), Y({"1"}))), P("y")));
  EXPECT_TRUE(same(build_zeta(riccati()), P("(a1*y + a0)/(b1*y + b0)")));
  Structure s = Structure::rational(Y({"0", "x"}), Y({"1"}));
  s.with_log(Y({"0", "1"}), Y({"1"}));
  EXPECT_TRUE(same(build_zeta(s), P("x*y + ln(y)")));
}

TEST(BuildF, Examples) {
  RatY f = build_f(Structure::rational(Y({"-x", "1"}), Y({"1"})));
  EXPECT_TRUE(same(f.to_expr(), Expr(1)));

  Structure s = Structure::rational(Y({"0", "x"}), Y({"1"}));
  s.with_log(Y({"0", "1"}), Y({"1"}));
  EXPECT_TRUE(same(build_f(s).to_expr(), P("-y^2/(x*y + 1)")));
}

TEST(BuildF, RiccatiMatchesPrintedCoefficients) {
  RatY f = build_f(riccati());
  ASSERT_EQ(f.den.degree(), 0);
  ASSERT_EQ(f.num.degree(), 2);
  for (int k = 0; k <= 2; ++k) EXPECT_TRUE(same(f.num.coeff(k) / f.den.coeff(0), P(fixtures::kRiccatiF[k]))) << k;
  // the printed denominator, with its sign
  EXPECT_TRUE(same(f.den.coeff(0), P("-a1*b0 + b1*a0")));
}

TEST(BuildF, AbelAndQuadraticMatchPrinted) {
  Structure abel = Structure::rational(Y({"b1", "a1"}), Y({"1"}));
  abel.with_log(Y({"b2", "a2"}), Y({"1"}));
  RatY fa = build_f(abel);
  EXPECT_EQ(fa.num, PolyY::from_expr(P(fixtures::kAbelNum)));
  EXPECT_EQ(fa.den, PolyY::from_expr(P(fixtures::kAbelDen)));

  RatY fu = build_f(Structure::rational(Y({"a0", "a1", "a2"}), Y({"b0", "b1", "b2"})));
  EXPECT_EQ(fu.num, PolyY::from_expr(P(fixtures::kUcNum)));
  EXPECT_EQ(fu.den, PolyY::from_expr(P(fixtures::kUcDen)));
}

// Expanded closed form of f for all three blocks with alpha = beta = 1, with
// the missing differentials restored.
TEST(BuildF, AgreesWithExpandedFormula) {
  Structure g = generic_structure(DegreeProfile::parse("rational:1,1+log:1,1+arctan:1,1"));
  for (std::uint64_t seed : {3u, 4u}) {
    Instance inst = random_instance(g, seed, 1);
    const Structure& s = inst.structure;
    Expr p1 = s.p1.to_expr(), q1 = s.q1.to_expr(), p2 = s.p2.to_expr(), q2 = s.q2.to_expr();
    Expr p3 = s.p3.to_expr(), q3 = s.q3.to_expr();
    auto part = [&](auto d) {
      return q1 * q1 * d(p2) * q2 * q3 * q3 + q1 * q1 * d(p2) * q2 * p3 * p3 - q1 * q1 * p2 * d(q2) * q3 * q3 -
             q1 * q1 * p2 * d(q2) * p3 * p3 + d(p1) * q2 * p2 * q1 * q3 * q3 + d(p1) * q2 * p2 * q1 * p3 * p3 -
             p1 * d(q1) * q2 * p2 * q3 * q3 - p1 * d(q1) * q2 * p2 * p3 * p3 + q2 * p2 * q1 * q1 * d(p3) * q3 -
             q2 * p2 * q1 * q1 * p3 * d(q3);
    };
    Expr printed = -part([](const Expr& e) { return diff(e); }) / part([](const Expr& e) { return diff_y(e); });
    EXPECT_TRUE(same(build_f(s).to_expr(), printed)) << seed;
  }
}

TEST(BuildF, DegenerateStructure) {
  EXPECT_THROW(build_f(Structure::rational(Y({"x"}), Y({"1"}))), Error);
  try {
    build_f(Structure::rational(Y({"a"}), Y({"1"})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateStructure);
  }
}

TEST(BuildZeta, ZeroDenominator) {
  try {
    build_zeta(Structure::rational(Y({"1"}), Y({"0"})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroDenominator);
  }
}

TEST(DegreeBounds, Examples) {
  DegreeBounds z = degree_bounds(DegreeProfile::parse("rational:0,0+log:0,0+arctan:0,0"));
  EXPECT_EQ(z.n_P_max, 0);
  EXPECT_EQ(z.n_Q_max, -1);
  EXPECT_EQ(z.total_params, 6);
  EXPECT_EQ(z.free_params, 1);

  DegreeBounds r = degree_bounds(DegreeProfile::parse("rational:1,1"));
  EXPECT_EQ(r.n_P_max, 2);
  EXPECT_EQ(r.n_Q_max, 1);
  EXPECT_EQ(r.total_params, 4);

  DegreeBounds a = degree_bounds(DegreeProfile::parse("rational:1,0+log:1,0"));
  EXPECT_EQ(a.n_P_max, 2);
  EXPECT_EQ(a.n_Q_max, 1);
  EXPECT_EQ(a.total_params, 6);
  EXPECT_EQ(a.free_params, 3);
}

TEST(DegreeProfile, ParseAndPrint) {
  DegreeProfile d = DegreeProfile::parse("rational:1,1+log:1,0");
  EXPECT_EQ(d.to_string(), "rational:1,1+log:1,0");
  EXPECT_EQ(d.N(), 3);
  EXPECT_THROW(DegreeProfile::parse("poly:1,1"), Error);
  EXPECT_THROW(DegreeProfile::parse("rational:1"), Error);
}

TEST(RandomInstance, RiccatiContract) {
  Instance inst = random_instance(riccati(), 1, 1);
  Expr w = substitute(P("a1*b0 - b1*a0"), inst.substitution());
  EXPECT_NE(eval_numeric(w, 0.0), 0.0);
  EXPECT_TRUE(inst.structure.unknowns().empty());
}

TEST(RandomInstance, AbelContract) {
  Structure abel = Structure::rational(Y({"b1", "a1"}), Y({"1"}));
  abel.with_log(Y({"b2", "a2"}), Y({"1"}));
  Instance inst = random_instance(abel, 2, 2);
  Expr w = substitute(P("a1*a2"), inst.substitution());
  for (double x : instance_sample_points()) EXPECT_NE(eval_numeric(w, x), 0.0);
}

TEST(RandomInstance, BuildFSucceedsAndIsDeterministic) {
  Structure g = generic_structure(DegreeProfile::parse("rational:1,1+log:1,0"));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Instance a = random_instance(g, seed, 1);
    Instance b = random_instance(g, seed, 1);
    EXPECT_NO_THROW(build_f(a.structure));
    EXPECT_EQ(to_string(build_zeta(a.structure)), to_string(build_zeta(b.structure)));
  }
}

TEST(StructureJson, RoundTrip) {
  Structure s = Structure::rational(Y({"b1", "a1"}), Y({"1"}));
  s.with_log(Y({"b2", "a2"}), Y({"1"}), Expr(Rational(1, 2)));
  Structure t = Structure::from_json(s.to_json());
  EXPECT_EQ(t.to_json().dump(), s.to_json().dump());
  EXPECT_TRUE(t.log_present);
  EXPECT_FALSE(t.arctan_present);
}

TEST(Properties, PdeIdentityAndFInvariance) {
  Structure g = generic_structure(DegreeProfile::parse("rational:1,1+log:1,0"));
  Instance inst = random_instance(g, 11, 1);
  Expr z = build_zeta(inst.structure);
  RatY f = build_f(inst.structure);
  EXPECT_TRUE(is_zero(diff(z) + f.to_expr() * diff_y(z)));
  for (const Expr& gz : {Expr(3) * z + Expr(1), z * z * z + z}) EXPECT_TRUE(same(f_from_zeta(gz).to_expr(), f.to_expr()));
}

TEST(Properties, LogShiftAbsorption) {
  Structure base = Structure::rational(Y({"b1", "a1"}), Y({"1"}));
  base.with_log(Y({"b2", "a2"}), Y({"1"}));
  Substitution v;
  v.set("a1", P("x")).set("b1", P("x^2")).set("a2", P("x-2")).set("b2", P("3"));
  Expr lam = P("x^2 + 1");
  Structure scaled = base.substituted(v);
  scaled.p2 = scaled.p2.scaled(lam);
  Structure shifted = base.substituted(v);
  shifted.p1 = shifted.p1 + PolyY::constant(Expr::ln(lam));
  Expr fa = build_f(scaled).to_expr(), fb = build_f(shifted).to_expr();
  for (double x : {0.1, 0.7, 1.9})
    for (double y : {-0.4, 0.9}) EXPECT_NEAR(eval_numeric(fa, x, y), eval_numeric(fb, x, y), 1e-12);
}
