#include "ratode/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "ratode/cases.hpp"
#include "ratode/error.hpp"
#include "ratode/ode.hpp"
#include "ratode/parse.hpp"
#include "ratode/reducer.hpp"
#include "ratode/structure.hpp"
#include "ratode/verifier.hpp"

namespace ratode {

using json = nlohmann::json;

std::string command_name(Command c) {
  switch (c) {
    case Command::DeriveF: return "derive-f";
    case Command::Match: return "match";
    case Command::Solve: return "solve";
    case Command::Case: return "case";
    case Command::Verify: return "verify";
    case Command::Sweep: return "sweep";
  }
  return "?";
}

Command parse_command(const std::string& s) {
  for (auto c : {Command::DeriveF, Command::Match, Command::Solve, Command::Case, Command::Verify, Command::Sweep})
    if (command_name(c) == s) return c;
  throw Error(ErrorCode::InvalidArgument, "unknown command '" + s + "'");
}

void JobConfig::validate() const {
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, command_name(command) + " needs " + what);
  };
  need(tol > 0, "a positive --tol");
  need(span > 0, "a positive span");
  need(degree >= 0, "a nonnegative --degree");
  switch (command) {
    case Command::DeriveF: need(!structure.empty(), "--structure"); break;
    case Command::Match: need(!ode.empty() && !structure.empty(), "--ode and --structure"); break;
    case Command::Solve: need(!ode.empty(), "--ode"); break;
    case Command::Case: need(!ode.empty() && !case_name.empty(), "--ode and --case"); break;
    case Command::Verify: need(!ode.empty() && !zeta.empty(), "--ode and --zeta"); break;
    case Command::Sweep: need(!ode.empty() && max_n >= 1, "--ode and --max-n >= 1"); break;
  }
}

namespace {

struct Context {
  const JobConfig& job;
  json report;
  std::ostringstream text;
  int exit_code = 0;
};

Structure load_structure(const std::string& spec) {
  auto first = spec.find_first_not_of(" \t\n");
  if (first != std::string::npos && spec[first] == '{') return Structure::from_json(json::parse(spec));
  if (spec.size() > 5 && spec.ends_with(".json")) {
    std::ifstream in(spec);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + spec);
    return Structure::from_json(json::parse(in));
  }
  return generic_structure(DegreeProfile::parse(spec));
}

json ratio_json(const RatY& f) {
  return {{"num", to_string(f.num.to_expr())}, {"den", to_string(f.den.to_expr())}};
}

std::string display_ode(const RatY& f) {
  return "dy/dx = (" + to_display(f.num.to_expr()) + ")/(" + to_display(f.den.to_expr()) + ")";
}

DiffSystem match_with_fallback(const Structure& s, const OdeSpec& ode, const std::optional<MatchMode>& mode,
                               const AnsatzOptions& aopt, int degree, AnsatzResult* ans) {
  if (mode) {
    DiffSystem sys = match(s, ode, *mode);
    if (ans) *ans = ansatz_solve(sys, degree, aopt);
    return sys;
  }
  std::optional<Error> strict_error;
  try {
    DiffSystem sys = match_strict(s, ode);
    AnsatzResult r = ansatz_solve(sys, degree, aopt);
    if (!r.solutions.empty() || !ans) {
      if (ans) *ans = std::move(r);
      return sys;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegreeMismatch) throw;
    strict_error = e;
  }
  DiffSystem sys = match_projective(s, ode);
  if (ans) *ans = ansatz_solve(sys, degree, aopt);
  return sys;
}

struct Candidate {
  Expr zeta;
  Bindings bindings;
  SolutionCheck check;
  json detail;
};

// Ansatz search on one structure; first verified candidate wins.
std::optional<Candidate> ansatz_attempt(const Structure& s, const OdeSpec& ode, const JobConfig& job,
                                        json& attempt, const AnsatzOptions& aopt = {}) {
  AnsatzResult ans;
  DiffSystem sys = match_with_fallback(s, ode, job.mode, aopt, job.degree, &ans);
  attempt["mode"] = mode_name(sys.mode);
  attempt["equations"] = sys.equations.size();
  attempt["ansatz_solutions"] = ans.solutions.size();
  attempt["ansatz_nodes"] = ans.nodes;
  attempt["exhausted"] = ans.exhausted;
  SolutionCheckOptions copt;
  copt.tol = job.tol;
  copt.span = job.span;
  for (const auto& sol : ans.solutions) {
    Expr zeta;
    try {
      zeta = build_zeta(s.substituted(sol.substitution()));
    } catch (const Error&) {
      continue;
    }
    SolutionCheck c = check_solution(zeta, ode.f, {}, copt);
    if (c.passed) return Candidate{zeta, {}, c, sol.to_json()};
  }
  return std::nullopt;
}

Particular particular(const std::string& text) { return Particular::of(parse_expr(text)); }

CaseOptions case_options(const JobConfig& job) {
  CaseOptions o;
  o.anchor = job.anchor;
  o.tol = job.tol;
  return o;
}

CaseResult run_named_case(CaseKind k, const OdeSpec& ode, const JobConfig& job) {
  std::optional<Particular> a2;
  if (!job.a2.empty()) a2 = particular(job.a2);
  RiccatiParticulars parts;
  if (!job.a0.empty()) parts.a0 = particular(job.a0);
  if (!job.b0.empty()) parts.b0 = particular(job.b0);
  return run_case(k, Coefficients::from_ode(ode), case_options(job), a2, parts);
}

std::vector<CaseKind> applicable_cases(const OdeSpec& ode) {
  int n = ode.num_degree(), m = ode.den_degree();
  std::vector<CaseKind> out;
  if (m == 0 && n <= 2) out.push_back(CaseKind::Riccati);
  if (m <= 1 && n <= 2) out.push_back(CaseKind::AbelA);
  if (m <= 2 && n <= 3) out.push_back(CaseKind::UC1);
  if (m <= 2 && n == 4) out.push_back(CaseKind::UC2);
  return out;
}

void emit_solution(Context& cx, const std::string& method, const Candidate& c) {
  cx.report["status"] = "solved";
  cx.report["method"] = method;
  cx.report["zeta"] = to_string(c.zeta);
  cx.report["verification"] = c.check.to_json();
  cx.text << "method: " << method << "\n";
  cx.text << "zeta(x,y) = " << to_display(c.zeta) << "\n";
  cx.text << "general solution: zeta(x,y) = c\n";
  cx.text << "verification: drift " << c.check.report.numeric_max_drift << " over ["
          << c.check.report.trajectory.x0 << ", "
          << c.check.report.trajectory.x0 + c.check.report.trajectory.span << "], symbolic residual "
          << (c.check.symbolic_zero ? "0" : "nonzero (numeric " + std::to_string(c.check.pde_numeric) + ")")
          << "\n";
}

// ---------------------------------------------------------------- commands

void derive_f(Context& cx) {
  const JobConfig& job = cx.job;
  Structure s = load_structure(job.structure);
  if (job.seed) {
    Instance inst = random_instance(s, *job.seed, job.degree);
    s = inst.structure;
    json vals = json::object();
    for (const auto& [k, v] : inst.values) vals[k] = to_string(v);
    cx.report["instance"] = vals;
  }
  RatY f = build_f(s);
  cx.report["structure"] = s.to_json();
  cx.report["profile"] = s.profile().to_string();
  cx.report["zeta"] = to_string(build_zeta(s));
  cx.report["f"] = ratio_json(f);
  cx.report["ode"] = OdeSpec::from_ratio(f).to_string();
  cx.text << "zeta(x,y) = " << to_display(build_zeta(s)) << "\n" << display_ode(f) << "\n";
}

void match_cmd(Context& cx) {
  OdeSpec ode = parse_ode(cx.job.ode);
  Structure s = load_structure(cx.job.structure);
  DiffSystem sys = match_with_fallback(s, ode, cx.job.mode, {}, 0, nullptr);
  cx.report["system"] = sys.to_json();
  cx.text << "mode: " << mode_name(sys.mode) << ", " << sys.equations.size() << " equations\n";
  for (const auto& e : sys.equations) cx.text << "  " << to_display(e) << " = 0\n";
  for (const auto& e : sys.inequations) cx.text << "  " << to_display(e) << " <> 0\n";
}

void case_report_text(Context& cx, const CaseReport& r) {
  for (const auto& c : r.conditions)
    cx.text << "  condition " << c.id << ": " << (c.holds ? "holds" : "FAILS") << " (residual "
            << (c.exact || is_zero(c.residual) ? to_display(c.residual) : std::to_string(c.residual_num)) << ")\n";
}

void case_cmd(Context& cx) {
  OdeSpec ode = parse_ode(cx.job.ode);
  CaseKind k = parse_case(cx.job.case_name);
  CaseResult r = run_named_case(k, ode, cx.job);
  const CaseReport& rep = report_of(r);
  cx.report["case_report"] = rep.to_json();
  cx.text << "case " << case_name(k) << "\n";
  case_report_text(cx, rep);
  if (std::holds_alternative<ConditionReport>(r)) {
    cx.report["status"] = "conditions_failed";
    cx.exit_code = 2;
    return;
  }
  if (const auto* n = std::get_if<NeedsSecondOrderSolution>(&r)) {
    cx.report["status"] = "needs_second_order_solution";
    cx.report["equation"] = to_string(n->equation) + " = 0";
    cx.text << "supply a nonvanishing solution a2 of\n  " << to_display(n->equation) << " = 0\n";
    return;
  }
  const auto& g = std::get<GeneralSolution>(r);
  SolutionCheckOptions copt;
  copt.tol = cx.job.tol;
  copt.span = cx.job.span;
  Candidate c{g.zeta, g.bindings, check_solution(g.zeta, ode.f, g.bindings, copt), {}};
  emit_solution(cx, "case:" + case_name(k), c);
  if (!c.check.passed) {
    cx.report["status"] = "verification_failed";
    cx.text << "verification FAILED: " << c.check.reason << "\n";
    cx.exit_code = 2;
  }
}

void solve_cmd(Context& cx) {
  const JobConfig& job = cx.job;
  OdeSpec ode = parse_ode(job.ode);
  cx.report["ode"] = ode.to_string();
  json attempts = json::array();
  bool conditions_failed = false;
  auto finish = [&](const std::string& method, const Candidate& c) {
    cx.report["attempts"] = attempts;
    emit_solution(cx, method, c);
  };

  if (!job.structure.empty()) {
    Structure s = load_structure(job.structure);
    json attempt{{"method", "ansatz:" + s.profile().to_string()}};
    try {
      DiffSystem sys = match_with_fallback(s, ode, job.mode, {}, 0, nullptr);
      TriangularizeResult tri = triangularize(sys);
      attempt["branches"] = tri.branches.size();
      attempt["truncated"] = tri.truncated;
    } catch (const Error& e) {
      attempt["triangularize_error"] = e.what();
    }
    auto c = ansatz_attempt(s, ode, job, attempt);
    attempts.push_back(attempt);
    if (c) {
      cx.report["ansatz"] = c->detail;
      return finish(attempt["method"], *c);
    }
  } else {
    SolutionCheckOptions copt;
    copt.tol = job.tol;
    copt.span = job.span;
    for (CaseKind k : applicable_cases(ode)) {
      json attempt{{"method", "case:" + case_name(k)}};
      try {
        CaseResult r = run_named_case(k, ode, job);
        attempt["case_report"] = report_of(r).to_json();
        if (std::holds_alternative<ConditionReport>(r)) {
          attempt["outcome"] = "conditions_failed";
          conditions_failed = true;
        } else if (const auto* n = std::get_if<NeedsSecondOrderSolution>(&r)) {
          attempt["outcome"] = "needs_second_order_solution";
          attempt["equation"] = to_string(n->equation) + " = 0";
        } else {
          const auto& g = std::get<GeneralSolution>(r);
          Candidate c{g.zeta, g.bindings, check_solution(g.zeta, ode.f, g.bindings, copt), {}};
          attempt["outcome"] = c.check.passed ? "verified" : "verification_failed";
          if (!c.check.passed) attempt["reason"] = c.check.reason;
          attempts.push_back(attempt);
          if (c.check.passed) {
            cx.report["case_report"] = report_of(r).to_json();
            return finish("case:" + case_name(k), c);
          }
          continue;
        }
      } catch (const Error& e) {
        attempt["outcome"] = "error";
        attempt["error"] = std::string(code_name(e.code()));
        attempt["message"] = e.what();
      }
      attempts.push_back(attempt);
    }
    AnsatzOptions aopt;
    aopt.max_nodes = 1500;
    for (const auto& d : enumerate_profiles(std::min(job.max_n, 2))) {
      json attempt{{"method", "ansatz:" + d.to_string()}};
      try {
        auto c = ansatz_attempt(generic_structure(d), ode, job, attempt, aopt);
        if (c) {
          attempts.push_back(attempt);
          cx.report["ansatz"] = c->detail;
          return finish(attempt["method"], *c);
        }
      } catch (const Error& e) {
        if (e.code() == ErrorCode::DegreeMismatch) continue;
        attempt["error"] = std::string(code_name(e.code()));
      }
      attempt["outcome"] = "no verified candidate";
      attempts.push_back(attempt);
    }
  }
  cx.report["attempts"] = attempts;
  cx.report["status"] = conditions_failed ? "conditions_failed" : "not_found";
  cx.text << "no verified solution (" << attempts.size() << " attempts)\n";
  cx.exit_code = 2;
}

void verify_cmd(Context& cx) {
  OdeSpec ode = parse_ode(cx.job.ode);
  Expr zeta = normalize(parse_expr(cx.job.zeta));
  SolutionCheckOptions copt;
  copt.tol = cx.job.tol;
  copt.span = cx.job.span;
  Candidate c{zeta, {}, check_solution(zeta, ode.f, {}, copt), {}};
  emit_solution(cx, "verify", c);
  if (!c.check.passed) {
    cx.report["status"] = "failed";
    cx.text << "verification FAILED: " << c.check.reason << "\n";
    cx.exit_code = 2;
  } else {
    cx.report["status"] = "passed";
  }
}

void sweep_cmd(Context& cx) {
  const JobConfig& job = cx.job;
  OdeSpec ode = parse_ode(job.ode);
  std::vector<DegreeProfile> ps = enumerate_profiles(job.max_n);
  AnsatzOptions aopt;
  aopt.max_nodes = 1500;
  auto one = [&](const DegreeProfile& d) {
    json row{{"profile", d.to_string()}, {"N", d.N()}};
    try {
      auto c = ansatz_attempt(generic_structure(d), ode, job, row, aopt);
      row["match"] = c.has_value();
      if (c) row["zeta"] = to_string(c->zeta);
    } catch (const Error& e) {
      row["match"] = false;
      row["error"] = std::string(code_name(e.code()));
    }
    return row;
  };
  std::vector<json> rows(ps.size());
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t base = 0; base < ps.size(); base += workers) {
    std::vector<std::future<json>> fs;
    for (std::size_t i = base; i < std::min(ps.size(), base + workers); ++i)
      fs.push_back(std::async(std::launch::async, one, std::cref(ps[i])));
    for (std::size_t i = 0; i < fs.size(); ++i) rows[base + i] = fs[i].get();
  }
  json matches = json::array();
  for (const auto& r : rows)
    if (r["match"].get<bool>()) {
      matches.push_back(r["profile"]);
      cx.text << r["profile"].get<std::string>() << ": zeta = " << r["zeta"].get<std::string>() << "\n";
    }
  cx.report["profiles"] = rows;
  cx.report["matches"] = matches;
  cx.text << matches.size() << " of " << rows.size() << " profiles match\n";
  if (matches.empty()) cx.exit_code = 2;
}

}  // namespace

JobOutput run(const JobConfig& job) {
  Context cx{job, json::object(), {}, 0};
  cx.report["schema"] = kSchemaVersion;
  cx.report["command"] = command_name(job.command);
  try {
    job.validate();
    switch (job.command) {
      case Command::DeriveF: derive_f(cx); break;
      case Command::Match: match_cmd(cx); break;
      case Command::Solve: solve_cmd(cx); break;
      case Command::Case: case_cmd(cx); break;
      case Command::Verify: verify_cmd(cx); break;
      case Command::Sweep: sweep_cmd(cx); break;
    }
  } catch (const Error& e) {
    cx.report["status"] = "error";
    cx.report["error"] = {{"code", std::string(code_name(e.code()))}, {"message", e.what()}};
    cx.text << "error: " << e.what() << "\n";
    cx.exit_code = 1;
  } catch (const json::exception& e) {
    cx.report["status"] = "error";
    cx.report["error"] = {{"code", "ParseError"}, {"message", e.what()}};
    cx.text << "error: " << e.what() << "\n";
    cx.exit_code = 1;
  }
  return JobOutput{cx.exit_code, std::move(cx.report), cx.text.str()};
}

}  // namespace ratode
