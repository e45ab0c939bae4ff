#include <gtest/gtest.h>

#include <cmath>

#include "ratode/error.hpp"
#include "ratode/parse.hpp"
#include "ratode/structure.hpp"
#include "ratode/verifier.hpp"

using namespace ratode;

namespace {

Expr P(const std::string& s) { return parse_expr(s); }
RatY F(const std::string& s) { return normalized_ratio(rational_form(P(s))); }

}  // namespace

TEST(PdeResidual, Trivial) { EXPECT_TRUE(is_zero(pde_residual(P("y - x"), F("1")))); }

TEST(PdeResidual, LogFirstIntegral) {
  EXPECT_TRUE(is_zero(pde_residual(P("x*y + ln(y)"), F("-y^2/(x*y + 1)"))));
  EXPECT_FALSE(is_zero(pde_residual(P("x*y + ln(y)"), F("y^2/(x*y + 1)"))));
}

TEST(PdeResidual, SymbolicRiccati) {
  std::vector<Expr> p{P("a0"), P("a1")}, q{P("b0"), P("b1")};
  Structure s = Structure::rational(PolyY(p), PolyY(q));
  EXPECT_TRUE(is_zero(pde_residual(build_zeta(s), build_f(s))));
}

TEST(PdeResidual, NumericMatchesSymbolic) {
  auto [r, at] = pde_residual_numeric(P("x*y + ln(y)"), F("-y^2/(x*y + 1)"),
                                      {{0.1, 0.5}, {0.7, 2.0}, {-0.3, 1.5}});
  EXPECT_LT(r, 1e-12);
  auto [bad, where] = pde_residual_numeric(P("x*y + ln(y)"), F("y^2/(x*y + 1)"), {{0.1, 0.5}, {0.7, 2.0}});
  EXPECT_GT(bad, 0.1);
  EXPECT_EQ(where, 0.7);
}

TEST(Trajectory, SquareOracle) {
  // y = 1/(1 - x) through (0, 1).
  auto r1 = trajectory_check(P("x + 1/y"), F("y^2"), 0, 1, 0.5, 1e-6);
  EXPECT_LT(r1.numeric_max_drift, 1e-6);
  EXPECT_GE(r1.trajectory.checkpoints, 50);
  EXPECT_NEAR(r1.trajectory.span, 0.5, 1e-12);
  ASSERT_TRUE(r1.symbolic_residual.has_value());
  EXPECT_TRUE(is_zero(*r1.symbolic_residual));
  auto r2 = trajectory_check(P("x + 1/y"), F("y^2"), 0, 1, 0.5, 5e-7);
  EXPECT_LE(r2.numeric_max_drift, 2 * r1.numeric_max_drift);
}

TEST(Trajectory, DriftDetectsWrongIntegral) {
  auto r = trajectory_check(P("x - 1/y"), F("y^2"), 0, 1, 0.5, 1e-6);
  EXPECT_GT(r.numeric_max_drift, 0.1);
}

TEST(Trajectory, ConstantSlope) {
  auto r = trajectory_check(P("y - x"), F("1"), -2, 3, 1.0, 1e-8);
  EXPECT_LT(r.numeric_max_drift, 1e-12);
}

TEST(Trajectory, BlowUpShrinksSpan) {
  auto r = trajectory_check(P("x + 1/y"), F("y^2"), 0, 1, 2.0, 1e-6);
  EXPECT_LE(r.trajectory.span, 1.0 + 1e-6);
  EXPECT_GT(r.trajectory.span, 0.9);
  ASSERT_FALSE(r.trajectory.pole_windows.empty());
  EXPECT_NEAR(r.trajectory.pole_windows.back().second, 1.0, 1e-3);
  EXPECT_LT(r.numeric_max_drift, 1e-5);
}

TEST(Trajectory, DenominatorZeroIsNotSteppedOver) {
  // y^2 = 1 - 2x reaches y = 0 (den f = 0) at x = 1/2.
  auto r = trajectory_check(P("y^2 + 2*x"), F("-1/y"), 0, 1, 1.0, 1e-6);
  EXPECT_LE(r.trajectory.span, 0.5 + 1e-6);
  EXPECT_GT(r.trajectory.span, 0.45);
  ASSERT_FALSE(r.trajectory.pole_windows.empty());
  EXPECT_NEAR(r.trajectory.pole_windows.back().second, 0.5, 1e-6);
  EXPECT_LT(r.numeric_max_drift, 1e-6);
}

TEST(Trajectory, SingularStart) {
  EXPECT_THROW(trajectory_check(P("y^2 + 2*x"), F("-1/y"), 0, 0, 1.0, 1e-6), PoleEncountered);
  EXPECT_THROW(trajectory_check(P("y"), F("1"), 0, 0, -1.0, 1e-6), Error);
  // Pole right after the start: the usable span collapses.
  EXPECT_THROW(trajectory_check(P("y^2 + 2*x"), F("-1/y"), 0.4999999, std::sqrt(2e-7), 1.0, 1e-6),
               PoleEncountered);
}

TEST(Trajectory, ReportJson) {
  auto j = trajectory_check(P("y - x"), F("1"), 0, 0, 1.0, 1e-6).to_json();
  EXPECT_EQ(j["symbolic_residual"], "0");
  EXPECT_TRUE(j["trajectory"]["pole_windows"].is_array());
  EXPECT_GE(j["trajectory"]["checkpoints"].get<int>(), 50);
}
