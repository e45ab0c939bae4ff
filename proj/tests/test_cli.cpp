#include <gtest/gtest.h>

#include "ratode/cli.hpp"

using namespace ratode;

namespace {

JobConfig job(Command c, std::string ode = {}) {
  JobConfig j;
  j.command = c;
  j.ode = std::move(ode);
  return j;
}

}  // namespace

TEST(Cli, SolveAbelInstance) {
  JobOutput out = run(job(Command::Solve, "dy/dx = (-(y^2+y))/(x*y + x + 1)"));
  EXPECT_EQ(out.exit_code, 0) << out.report.dump(2);
  EXPECT_EQ(out.report["method"], "case:abelA");
  EXPECT_TRUE(out.report["verification"]["passed"].get<bool>());
  EXPECT_LT(out.report["verification"]["numeric_max_drift"].get<double>(), 1e-6);
}

TEST(Cli, CaseWithFailedConditionExitsTwo) {
  JobConfig j = job(Command::Case, "dy/dx = (-(y^2+y) + x)/(x*y + x + 1)");
  j.case_name = "abelA";
  JobOutput out = run(j);
  EXPECT_EQ(out.exit_code, 2);
  EXPECT_EQ(out.report["status"], "conditions_failed");
  EXPECT_FALSE(out.report["case_report"]["conditions"][0]["holds"].get<bool>());
}

TEST(Cli, VerifyClosedForm) {
  JobConfig j = job(Command::Verify, "dy/dx = (y^2)/(1)");
  j.zeta = "x + 1/y";
  EXPECT_EQ(run(j).exit_code, 0);
  j.zeta = "x - 1/y";
  JobOutput bad = run(j);
  EXPECT_EQ(bad.exit_code, 2);
  EXPECT_FALSE(bad.report["verification"]["passed"].get<bool>());
}

TEST(Cli, SolveFallsBackToAnsatz) {
  // X0 = 0 rules out the Riccati case formulas
  JobOutput out = run(job(Command::Solve, "dy/dx = (y^2)/(1)"));
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_EQ(out.report["attempts"][0]["error"], "RestrictionViolated");
  EXPECT_EQ(out.report["method"].get<std::string>().rfind("ansatz:", 0), 0u);
}

TEST(Cli, SolveWithGivenStructure) {
  JobConfig j = job(Command::Solve, "dy/dx = (y^2)/(1)");
  j.structure = "rational:1,1";
  JobOutput out = run(j);
  EXPECT_EQ(out.exit_code, 0) << out.report.dump(2);
  EXPECT_EQ(out.report["method"], "ansatz:rational:1,1");
}

TEST(Cli, DeriveFFromProfileAndJson) {
  JobConfig j = job(Command::DeriveF);
  j.structure = R"({"p1": ["1", "x"], "q1": ["0", "1"]})";
  JobOutput out = run(j);
  ASSERT_EQ(out.exit_code, 0) << out.text;
  EXPECT_EQ(out.report["ode"], "dy/dx = (y^2)/(1)");
  j.structure = "rational:1,1";
  j.seed = 7;
  JobOutput seeded = run(j);
  EXPECT_EQ(seeded.exit_code, 0);
  EXPECT_TRUE(seeded.report.contains("instance"));
}

TEST(Cli, MatchEmitsSystem) {
  JobConfig j = job(Command::Match, "dy/dx = (y^2 + 1)/(1)");
  j.structure = "rational:1,1";
  JobOutput out = run(j);
  ASSERT_EQ(out.exit_code, 0) << out.text;
  EXPECT_EQ(out.report["system"]["mode"], "strict");
  EXPECT_FALSE(out.report["system"]["equations"].empty());
}

TEST(Cli, ErrorsCarryCodes) {
  JobOutput out = run(job(Command::Solve, "dy/dx = (ln(y))/(1)"));
  EXPECT_EQ(out.exit_code, 1);
  EXPECT_EQ(out.report["error"]["code"], "NotPolynomialInY");
  JobConfig j = job(Command::Verify, "dy/dx = (y)/(1)");
  EXPECT_EQ(run(j).report["error"]["code"], "InvalidArgument");
  j.zeta = "y";
  j.tol = -1;
  EXPECT_EQ(run(j).exit_code, 1);
}

TEST(Cli, OutputIsDeterministic) {
  JobConfig j = job(Command::Solve, "dy/dx = (-(y^2+y))/(x*y + x + 1)");
  EXPECT_EQ(run(j).report.dump(), run(j).report.dump());
  JobConfig d = job(Command::DeriveF);
  d.structure = "rational:1,1+log:1,0";
  d.seed = 3;
  EXPECT_EQ(run(d).report.dump(), run(d).report.dump());
}

TEST(Cli, SweepFindsSmallProfiles) {
  JobConfig j = job(Command::Sweep, "dy/dx = (y^2)/(1)");
  j.max_n = 2;
  JobOutput out = run(j);
  EXPECT_EQ(out.exit_code, 0);
  bool found = false;
  for (const auto& m : out.report["matches"]) found = found || m == "rational:1,1";
  EXPECT_TRUE(found) << out.report["matches"].dump();
  EXPECT_EQ(out.report["schema"], kSchemaVersion);
}

TEST(Cli, NeedsSecondOrderSolutionReportsEquation) {
  JobConfig j = job(Command::Case, "dy/dx = (y^4 - y)/(y^2 - 2*x^2*y - x)");
  j.case_name = "uc2";
  JobOutput out = run(j);
  EXPECT_EQ(out.report["status"], "needs_second_order_solution") << out.report.dump(2);
  j.a2 = "1";
  JobOutput solved = run(j);
  EXPECT_EQ(solved.exit_code, 0) << solved.report.dump(2);
}
