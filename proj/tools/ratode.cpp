// ratode: structure-ansatz solver for dy/dx = P(x,y)/Q(x,y).
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ratode/cli.hpp"
#include "ratode/expr.hpp"

namespace {

void add_common(CLI::App* sub, ratode::JobConfig& job, std::string& mode, std::string& anchor) {
  sub->add_option("--tol", job.tol, "integrator and numeric residual tolerance")->capture_default_str();
  sub->add_option("--json", job.json_out, "write the JSON report to a file ('-' for stdout)");
  sub->add_option("--mode", mode, "matching mode: strict or projective (default: strict, projective on failure)")
      ->check(CLI::IsMember({"strict", "projective"}));
  sub->add_option("--anchor", anchor, "lower limit of formal integrals (a rational number)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure-ansatz solver for rational first-order ODEs"};
  app.require_subcommand(1);
  ratode::JobConfig job;
  std::string mode, anchor;
  std::uint64_t seed = 0;

  auto* derive = app.add_subcommand("derive-f", "print f = -zeta_x/zeta_y for a structure");
  derive->add_option("--structure", job.structure, "structure JSON, .json file, or profile like rational:1,1+log:1,0")
      ->required();
  derive->add_option("--seed", seed, "substitute a seeded random instance");
  derive->add_option("--degree", job.degree, "degree in x of random coefficients")->capture_default_str();

  auto* match = app.add_subcommand("match", "emit the differential-algebraic system for a structure");
  match->add_option("--ode", job.ode, "dy/dx = (P)/(Q)")->required();
  match->add_option("--structure", job.structure, "structure JSON, .json file, or profile")->required();

  auto* solve = app.add_subcommand("solve", "search a verified first integral");
  solve->add_option("--ode", job.ode, "dy/dx = (P)/(Q)")->required();
  solve->add_option("--structure", job.structure, "restrict the search to one structure");
  solve->add_option("--degree", job.degree, "ansatz degree in x")->capture_default_str();
  solve->add_option("--a2", job.a2, "particular solution a2(x) for the uc2 case");
  solve->add_option("--a0", job.a0, "particular solution a0(x) for the Riccati case");
  solve->add_option("--b0", job.b0, "particular solution b0(x) for the Riccati case");

  auto* cs = app.add_subcommand("case", "run one case family: riccati, abelA, uc1, uc2");
  cs->add_option("--case", job.case_name, "case family")->required();
  cs->add_option("--ode", job.ode, "dy/dx = (P)/(Q)")->required();
  cs->add_option("--a2", job.a2, "particular solution a2(x) (uc2)");
  cs->add_option("--a0", job.a0, "particular solution a0(x) (riccati)");
  cs->add_option("--b0", job.b0, "particular solution b0(x) (riccati)");

  auto* verify = app.add_subcommand("verify", "check a first integral against an ODE");
  verify->add_option("--ode", job.ode, "dy/dx = (P)/(Q)")->required();
  verify->add_option("--zeta", job.zeta, "candidate zeta(x,y)")->required();
  verify->add_option("--span", job.span, "trajectory length")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "try every degree profile up to a bound");
  sweep->add_option("--ode", job.ode, "dy/dx = (P)/(Q)")->required();
  sweep->add_option("--max-n", job.max_n, "bound on the total degree N")->capture_default_str();
  sweep->add_option("--degree", job.degree, "ansatz degree in x")->capture_default_str();

  for (auto* sub : {derive, match, solve, cs, verify, sweep}) add_common(sub, job, mode, anchor);

  CLI11_PARSE(app, argc, argv);

  job.command = ratode::parse_command(app.get_subcommands().front()->get_name());
  if (derive->count("--seed")) job.seed = seed;
  if (!mode.empty()) job.mode = ratode::parse_mode(mode);
  try {
    if (!anchor.empty()) job.anchor = ratode::parse_rational(anchor);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  ratode::JobOutput out = ratode::run(job);
  if (job.json_out == "-") {
    std::cout << out.report.dump(2) << "\n";
  } else {
    std::cout << out.text;
    if (!job.json_out.empty()) {
      std::ofstream f(job.json_out);
      if (!f) {
        std::cerr << "cannot write " << job.json_out << "\n";
        return 1;
      }
      f << out.report.dump(2) << "\n";
    }
  }
  return out.exit_code;
}
