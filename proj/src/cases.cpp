#include "ratode/cases.hpp"

#include <algorithm>
#include <cmath>

#include "case_formulas.hpp"
#include "ratode/error.hpp"
#include "ratode/matcher.hpp"
#include "ratode/parse.hpp"
#include "ratode/reducer.hpp"

namespace ratode {

namespace f = formulas;

std::string case_name(CaseKind k) {
  switch (k) {
    case CaseKind::Riccati: return "riccati";
    case CaseKind::AbelA: return "abelA";
    case CaseKind::UC1: return "uc1";
    case CaseKind::UC2: return "uc2";
  }
  return "?";
}

CaseKind parse_case(const std::string& s) {
  for (auto k : {CaseKind::Riccati, CaseKind::AbelA, CaseKind::UC1, CaseKind::UC2})
    if (case_name(k) == s) return k;
  throw Error(ErrorCode::InvalidArgument, "unknown case '" + s + "' (riccati, abelA, uc1, uc2)");
}

const CaseDefinition& case_definition(CaseKind k) {
  static const CaseDefinition riccati{
      CaseKind::Riccati,
      {{"a1", 0, f::kRiccatiA1}, {"a0", 2, f::kRiccatiA0pp}, {"b0", 1, f::kRiccatiB0p}},
      {},
      {"b1", "X0"}};
  static const CaseDefinition abel{
      CaseKind::AbelA,
      {{"b2", 0, f::kAbelB2}, {"b1", 1, f::kAbelB1p}, {"a2", 0, f::kAbelA2}, {"a1", 0, f::kAbelA1}},
      {{"Y0", 2, f::kAbelY0pp}},
      {"Y1*Y0' + X1*Y1 - 2*Y0*X2 - Y0*Y1'", "Y1", "Y1^2*X0 + Y0^2*X2 - Y1*X1*Y0"}};
  static const CaseDefinition uc1{
      CaseKind::UC1,
      {{"a1", 0, f::kUc1A1},
       {"b1", 0, f::kUc1B1},
       {"a0", 0, f::kUc1A0},
       {"b0", 1, f::kUc1B0p},
       {"b2", 1, f::kUc1B2p},
       {"a2", 0, "0"}},
      {{"Y2", 1, f::kUc1Y2p}, {"Y1", 1, f::kUc1Y1p}, {"X4", 0, "0"}},
      {"b2", "Y0", "Y1", "4*Y0*Y2 - Y1^2"}};
  static const CaseDefinition uc2{
      CaseKind::UC2,
      {{"a1", 0, f::kUc2A1},
       {"b1", 0, f::kUc2B1},
       {"a0", 0, f::kUc2A0},
       {"b0", 0, f::kUc2B0},
       {"b2", 1, f::kUc2B2p},
       {"a2", 2, f::kUc2A2pp}},
      {{"Y2", 1, f::kUc2Y2p}, {"Y1", 1, f::kUc2Y1p}},
      {"a2", "X4", "Y0", "4*Y0*Y2 - Y1^2"}};
  switch (k) {
    case CaseKind::Riccati: return riccati;
    case CaseKind::AbelA: return abel;
    case CaseKind::UC1: return uc1;
    case CaseKind::UC2: return uc2;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown case");
}

Substitution case_substitution(const CaseDefinition& d) {
  Substitution s;
  for (const auto& a : d.assignments) s.rule(a.name, a.order, parse_expr(a.rhs));
  for (const auto& c : d.conditions) s.rule(c.name, c.order, parse_expr(c.rhs));
  return s;
}

Coefficients Coefficients::from_ode(const OdeSpec& ode) { return from_ratio(ode.f); }

Coefficients Coefficients::from_ratio(const RatY& r) {
  if (r.num.degree() > 4 || r.den.degree() > 2)
    throw Error(ErrorCode::DegreeMismatch, "case families need deg P <= 4 and deg Q <= 2");
  Coefficients c;
  for (int k = 0; k <= 4; ++k) c.X[k] = r.num.coeff(k);
  for (int k = 0; k <= 2; ++k) c.Y[k] = r.den.coeff(k);
  return c;
}

Coefficients Coefficients::from_structure(const Structure& s) {
  InducedParts ip = induced_parts(s);
  return from_ratio(RatY(PolyY::from_rational(-ip.nx), PolyY::from_rational(ip.ny)));
}

Substitution Coefficients::substitution() const {
  Substitution s;
  for (int k = 0; k <= 4; ++k) s.set("X" + std::to_string(k), X[k]);
  for (int k = 0; k <= 2; ++k) s.set("Y" + std::to_string(k), Y[k]);
  return s;
}

nlohmann::json ConditionResult::to_json() const {
  return {{"id", id},   {"residual_sym", to_string(residual)}, {"residual_num", residual_num},
          {"at", at},   {"exact", exact},                      {"holds", holds}};
}

namespace {

// True when the expression is a rational function of x alone.
bool purely_rational(const Expr& e) {
  const RatFunc& r = rational_form(e);
  for (const Poly* p : {&r.num, &r.den})
    for (const auto& a : p->atoms())
      if (a.kind() != AtomKind::X) return false;
  return true;
}

bool try_eval(const Expr& e, double x, const Bindings& b, double& out) {
  try {
    out = eval_numeric(e, x, b);
    return std::isfinite(out);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::NonFiniteResult || err.code() == ErrorCode::DivisionByZero) return false;
    throw;
  }
}

// Sample abscissae avoiding zeros and poles of the given expressions.
std::vector<double> choose_samples(const std::vector<Expr>& guards, const CaseOptions& opt) {
  if (!opt.sample_xs.empty()) return opt.sample_xs;
  std::vector<double> good;
  for (int k = 0; k < 15; ++k) {
    double x = -0.93 + 0.137 * k;
    bool ok = true;
    for (const auto& g : guards) {
      double v = 0;
      try {
        ok = try_eval(g, x, opt.bindings, v) && std::abs(v) > 1e-9;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::MissingBinding) throw;
      }
      if (!ok) break;
    }
    if (ok) good.push_back(x);
  }
  return good;
}

Rational choose_anchor(const std::vector<Expr>& integrands, const CaseOptions& opt) {
  if (opt.anchor) return *opt.anchor;
  static const std::vector<Rational> candidates{
      Rational(0),     Rational(1, 4), Rational(-1, 4), Rational(1, 2),  Rational(-1, 2),
      Rational(3, 4),  Rational(-3, 4), Rational(1),    Rational(-1),    Rational(1, 8)};
  for (const auto& a : candidates) {
    bool ok = true;
    for (const auto& g : integrands) {
      double v = 0;
      try {
        ok = try_eval(g, a.get_d(), opt.bindings, v);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::MissingBinding) throw;
      }
      if (!ok) break;
    }
    if (ok) return a;
  }
  throw Error(ErrorCode::NonFiniteResult, "no regular anchor for the formal integrals");
}

std::string condition_id(CaseKind k, const CaseFormula& c) {
  return case_name(k) + "." + c.name + std::string(static_cast<std::size_t>(c.order), '\'');
}

Expr formula(const std::string& text, const Substitution& s) {
  return normalize(substitute(parse_expr(text), s));
}

Expr condition_expr(const CaseFormula& c) { return Expr::fn(c.name, c.order) - parse_expr(c.rhs); }

class CaseRun {
 public:
  CaseRun(CaseKind k, const Coefficients& c, const CaseOptions& opt)
      : def_(case_definition(k)), coeffs_(c.substitution()), opt_(opt) {
    rep_.kind = k;
  }

  const CaseDefinition& def() const { return def_; }
  const Substitution& coeffs() const { return coeffs_; }
  const CaseOptions& opt() const { return opt_; }
  CaseReport& report() { return rep_; }
  const std::vector<double>& xs() const { return xs_; }

  // Restrictions that only involve coefficients; `skip` names unknowns.
  void check_restrictions(const std::vector<std::string>& skip = {}) {
    std::vector<Expr> guards;
    for (const auto& r : def_.restrictions) {
      if (std::find(skip.begin(), skip.end(), r) != skip.end()) continue;
      Expr e = formula(r, coeffs_);
      rep_.restrictions.push_back(e);
      if (is_zero(e)) throw Error(ErrorCode::RestrictionViolated, "'" + r + " <> 0' fails identically");
      guards.push_back(e);
    }
    for (int k = 0; k <= 2; ++k) guards.push_back(formula("Y" + std::to_string(k), coeffs_) + Expr(0));
    // Coefficients only need to be finite, restrictions nonzero.
    std::vector<Expr> nonzero(guards.begin(), guards.end() - 3);
    xs_ = choose_samples(nonzero, opt_);
    rep_.sample_xs = xs_;
    for (std::size_t i = 0; i < nonzero.size(); ++i) {
      if (purely_rational(nonzero[i]) || xs_.empty()) continue;
      bool vanishes = true;
      for (double x : xs_) {
        double v = 0;
        if (!try_eval(nonzero[i], x, opt_.bindings, v) || std::abs(v) > 1e-12) vanishes = false;
      }
      if (vanishes)
        throw Error(ErrorCode::RestrictionViolated,
                    "'" + to_string(nonzero[i]) + " <> 0' vanishes at every sampled x");
    }
  }

  bool check_conditions() {
    for (const auto& c : def_.conditions) {
      ConditionResult r = check_condition(condition_expr(c), coeffs_, opt_.bindings, xs_, opt_.tol);
      r.id = condition_id(def_.kind, c);
      rep_.conditions.push_back(std::move(r));
    }
    return rep_.conditions_hold();
  }

  Rational anchor(const std::vector<Expr>& integrands) {
    Rational a = choose_anchor(integrands, opt_);
    for (const auto& g : integrands) rep_.formal_integrals.push_back(Expr::integral(g, a));
    return a;
  }

  GeneralSolution finish(const Expr& raw, Bindings b = {}) {
    Expr zeta = normalize(raw);
    rep_.zeta = zeta;
    GeneralSolution g;
    g.zeta = zeta;
    g.bindings = std::move(b);
    g.report = rep_;
    return g;
  }

 private:
  const CaseDefinition& def_;
  Substitution coeffs_;
  const CaseOptions& opt_;
  CaseReport rep_;
  std::vector<double> xs_;
};

const CaseFormula& find_formula(const CaseDefinition& d, const std::string& name) {
  for (const auto& a : d.assignments)
    if (a.name == name) return a;
  throw Error(ErrorCode::InvalidArgument, "no assignment for " + name);
}

// name := value, unless value is the name itself (a numerically bound particular).
void assign(Substitution& s, const std::string& name, const Expr& value) {
  if (value.kind() == ExprKind::Fn && value.name() == name && value.order() == 0) return;
  s.set(name, value);
}

bool mentions(const Expr& e, const std::string& name) {
  for (const auto& [n, k] : function_occurrences(e))
    if (n == name) return true;
  return false;
}

// Residual check of a differential equation for a supplied particular solution.
double particular_residual(const Expr& residual, const std::vector<double>& xs, const Bindings& b,
                           bool& exact_zero) {
  exact_zero = is_zero(residual);
  if (exact_zero) return 0;
  if (purely_rational(residual)) return INFINITY;
  double worst = 0;
  for (double x : xs) {
    double v = 0;
    if (try_eval(residual, x, b, v)) worst = std::max(worst, std::abs(v));
  }
  return worst;
}

}  // namespace

ConditionResult check_condition(const Expr& cond, const Substitution& coeffs, const Bindings& b,
                                const std::vector<double>& xs, double tol) {
  ConditionResult r;
  r.residual = normalize(substitute(cond, coeffs));
  if (is_zero(r.residual)) {
    r.exact = true;
    r.holds = true;
    return r;
  }
  r.exact = purely_rational(r.residual);
  bool any = false;
  for (double x : xs) {
    double v = 0;
    if (!try_eval(r.residual, x, b, v)) continue;
    any = true;
    if (std::abs(v) >= r.residual_num) {
      r.residual_num = std::abs(v);
      r.at = x;
    }
  }
  if (r.exact) {
    r.holds = false;
  } else {
    if (!any) throw Error(ErrorCode::NonFiniteResult, "condition could not be evaluated at any sample");
    r.holds = r.residual_num < tol;
  }
  return r;
}

bool CaseReport::conditions_hold() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.holds; });
}

nlohmann::json CaseReport::to_json() const {
  nlohmann::json j;
  j["case"] = case_name(kind);
  j["conditions"] = nlohmann::json::array();
  for (const auto& c : conditions) j["conditions"].push_back(c.to_json());
  j["restrictions"] = nlohmann::json::array();
  for (const auto& r : restrictions) j["restrictions"].push_back(to_string(r) + " <> 0");
  j["assignments"] = nlohmann::json::object();
  for (const auto& [n, e] : assignments) j["assignments"][n] = to_string(e);
  j["zeta"] = zeta ? nlohmann::json(to_string(*zeta)) : nlohmann::json(nullptr);
  j["formal_integrals"] = nlohmann::json::array();
  for (const auto& e : formal_integrals) j["formal_integrals"].push_back(to_string(e));
  j["sample_xs"] = sample_xs;
  return j;
}

const CaseReport& report_of(const CaseResult& r) {
  return std::visit([](const auto& v) -> const CaseReport& { return v.report; }, r);
}

CaseResult abelA_solve(const Coefficients& c, const CaseOptions& opt) {
  CaseRun run(CaseKind::AbelA, c, opt);
  run.check_restrictions();
  if (!run.check_conditions()) return ConditionReport{run.report()};
  const auto& d = run.def();
  Expr b2 = formula(find_formula(d, "b2").rhs, run.coeffs());
  Expr a2 = formula(find_formula(d, "a2").rhs, run.coeffs());
  Expr a1 = formula(find_formula(d, "a1").rhs, run.coeffs());
  Expr b1p = formula(find_formula(d, "b1").rhs, run.coeffs());
  Expr b1 = Expr::integral(b1p, run.anchor({b1p}));
  run.report().assignments = {{"a1", a1}, {"b1", b1}, {"a2", a2}, {"b2", b2}};
  Expr y = Expr::y();
  return run.finish(a1 * y + b1 + Expr::ln(normalize(a2 * y + b2)), opt.bindings);
}

CaseResult uc1_solve(const Coefficients& c, const CaseOptions& opt) {
  CaseRun run(CaseKind::UC1, c, opt);
  run.check_restrictions({"b2"});
  if (!run.check_conditions()) return ConditionReport{run.report()};
  const auto& d = run.def();
  const Expr b0f = Expr::fn("b0"), b2f = Expr::fn("b2");

  // b2' = r*b2 and b0' = p*b0 + q*b2, both linear.
  Expr b2rhs = formula(find_formula(d, "b2").rhs, run.coeffs());
  Expr r = normalize(b2rhs / b2f);
  if (mentions(r, "b2")) throw Error(ErrorCode::InvalidArgument, "b2 equation is not homogeneous linear");
  Expr b0rhs = formula(find_formula(d, "b0").rhs, run.coeffs());
  Expr p = substitute(b0rhs, Substitution().set("b0", Expr(1)).set("b2", Expr(0)));
  Expr q = substitute(b0rhs, Substitution().set("b0", Expr(0)).set("b2", Expr(1)));
  if (!is_zero(b0rhs - (p * b0f + q * b2f)))
    throw Error(ErrorCode::InvalidArgument, "b0 equation is not linear");

  Rational a = run.anchor({r, p});
  Expr b2 = Expr::exp(Expr::integral(r, a));
  Expr e = Expr::exp(Expr::integral(p, a));
  Expr inner = normalize(q * b2 / e);
  run.report().formal_integrals.push_back(Expr::integral(inner, a));
  Expr b0 = e * Expr::integral(inner, a);

  Substitution known = run.coeffs();
  known.set("b2", b2).set("b0", b0);
  Expr a1 = formula(find_formula(d, "a1").rhs, known);
  Expr b1 = formula(find_formula(d, "b1").rhs, known);
  Expr a0 = formula(find_formula(d, "a0").rhs, known);
  run.report().assignments = {{"a2", Expr(0)}, {"a1", a1}, {"a0", a0},
                              {"b2", b2},      {"b1", b1}, {"b0", b0}};
  Expr y = Expr::y();
  Expr zeta = (a1 * y + a0) / (b2 * y * y + b1 * y + b0);
  return run.finish(zeta, opt.bindings);
}

CaseResult uc2_solve(const Coefficients& c, const std::optional<Particular>& a2p, const CaseOptions& opt) {
  CaseRun run(CaseKind::UC2, c, opt);
  run.check_restrictions({"a2"});
  if (!run.check_conditions()) return ConditionReport{run.report()};
  const auto& d = run.def();
  const CaseFormula& a2pp = find_formula(d, "a2");
  Expr a2_equation = equation_normal_form(substitute(condition_expr(a2pp), run.coeffs()));
  if (!a2p) return NeedsSecondOrderSolution{a2_equation, run.report()};

  Bindings b = opt.bindings;
  Expr a2 = Expr::fn("a2");
  if (a2p->expr) {
    a2 = normalize(*a2p->expr);
    if (is_zero(a2)) throw Error(ErrorCode::RestrictionViolated, "'a2 <> 0' fails: supplied a2 is 0");
  } else {
    if (!a2p->fn) throw Error(ErrorCode::InvalidArgument, "empty a2 particular");
    b.bind("a2", a2p->fn);
    bool vanishes = !run.xs().empty();
    for (double x : run.xs()) vanishes = vanishes && std::abs(a2p->fn(0, x)) < 1e-12;
    if (vanishes) throw Error(ErrorCode::RestrictionViolated, "'a2 <> 0' fails: supplied a2 vanishes");
  }
  run.report().restrictions.insert(run.report().restrictions.begin(), a2);

  bool exact = false;
  Substitution with_a2;
  assign(with_a2, "a2", a2);
  Expr residual = normalize(substitute(a2_equation, with_a2));
  double res = particular_residual(residual, run.xs(), b, exact);
  if (!exact && !(res < opt.tol))
    throw Error(ErrorCode::SuppliedA2Invalid,
                "residual of the a2 equation is " + std::to_string(res) + " (tolerance " +
                    std::to_string(opt.tol) + ")");

  // b2' = (a2' b2 - X4)/a2  =>  b2 = -a2 * int(X4/a2^2).
  Expr integrand = normalize(substitute(Expr::fn("X4") / (a2 * a2), run.coeffs()));
  Rational anc = run.anchor({integrand});
  Expr b2 = normalize(-a2 * Expr::integral(integrand, anc));

  Substitution known = run.coeffs();
  assign(known, "a2", a2);
  known.set("b2", b2);
  Expr a1 = formula(find_formula(d, "a1").rhs, known);
  Expr b1 = formula(find_formula(d, "b1").rhs, known);
  Expr a0 = formula(find_formula(d, "a0").rhs, known);
  Expr b0 = formula(find_formula(d, "b0").rhs, known);
  run.report().assignments = {{"a2", a2}, {"a1", a1}, {"a0", a0}, {"b2", b2}, {"b1", b1}, {"b0", b0}};
  Expr y = Expr::y();
  Expr zeta = (a2 * y * y + a1 * y + a0) / (b2 * y * y + b1 * y + b0);
  return run.finish(zeta, b);
}

namespace {

std::optional<Expr> polynomial_particular(const Expr& equation, const std::string& unknown,
                                          const std::vector<Expr>& inequations,
                                          const std::function<bool(const Expr&)>& accept) {
  DiffSystem sys;
  sys.equations.push_back(equation);
  sys.inequations = inequations;
  sys.unknowns.push_back(unknown);
  for (int d = 0; d <= 2; ++d) {
    AnsatzResult res = ansatz_solve(sys, d);
    for (const auto& sol : res.solutions) {
      Expr v = sol.assignments.at(unknown);
      if (accept(v)) return v;
    }
  }
  return std::nullopt;
}

}  // namespace

CaseResult riccati_case(const Coefficients& c, const RiccatiParticulars& parts, const CaseOptions& opt) {
  if (!is_zero(c.X[3]) || !is_zero(c.X[4]) || !is_zero(c.Y[1]) || !is_zero(c.Y[2]))
    throw Error(ErrorCode::DegreeMismatch, "not a Riccati equation");
  if (!is_zero(c.Y[0] - 1)) {
    // Divide through so that the denominator is 1.
    Coefficients n = c;
    for (auto& x : n.X) x = normalize(x / c.Y[0]);
    n.Y[0] = Expr(1);
    return riccati_case(n, parts, opt);
  }
  CaseRun run(CaseKind::Riccati, c, opt);
  run.check_restrictions({"b1"});
  const auto& d = run.def();
  Substitution pin = run.coeffs();
  pin.set("b1", Expr(1));
  Expr b0_eq = formula("b0' - (" + find_formula(d, "b0").rhs + ")", pin);
  Expr a0_eq = formula("a0'' - (" + find_formula(d, "a0").rhs + ")", pin);
  Expr a1_rhs = formula(find_formula(d, "a1").rhs, pin);
  Bindings b = opt.bindings;

  auto use = [&](const std::optional<Particular>& given, const std::string& name, const Expr& eq,
                 const std::vector<Expr>& ineqs, const std::function<bool(const Expr&)>& accept) -> Expr {
    if (given) {
      Expr v = Expr::fn(name);
      if (given->expr) {
        v = normalize(*given->expr);
      } else {
        b.bind(name, given->fn);
      }
      bool exact = false;
      Expr residual = given->expr ? normalize(substitute(eq, Substitution().set(name, v))) : eq;
      double res = particular_residual(residual, run.xs(), b, exact);
      if (!exact && !(res < opt.tol))
        throw Error(ErrorCode::ParticularSolutionInvalid,
                    name + " residual " + std::to_string(res) + " exceeds " + std::to_string(opt.tol));
      return v;
    }
    auto found = polynomial_particular(eq, name, ineqs, accept);
    if (!found)
      throw Error(ErrorCode::ParticularSolutionInvalid,
                  "no polynomial particular solution of degree <= 2 for " + name + "; supply one");
    return *found;
  };

  Expr b0 = use(parts.b0, "b0", b0_eq, {}, [](const Expr&) { return true; });
  Substitution with_b0;
  assign(with_b0, "b0", b0);
  Expr a0_eq_b = normalize(substitute(a0_eq, with_b0));
  Expr a1_b = normalize(substitute(a1_rhs, with_b0));
  Expr den_s = normalize(Expr::fn("a0") - a1_b * b0);
  Expr a0 = use(parts.a0, "a0", a0_eq_b, {den_s},
                [&](const Expr& v) { return !is_zero(substitute(den_s, Substitution().set("a0", v))); });

  Substitution known;
  assign(known, "a0", a0);
  assign(known, "b0", b0);
  Expr a1 = normalize(substitute(a1_rhs, known));
  Expr den = normalize(substitute(den_s, known));
  if (is_zero(den))
    throw Error(ErrorCode::ParticularSolutionInvalid, "degenerate structure: a0*b1 - a1*b0 = 0");
  run.report().assignments = {{"b1", Expr(1)}, {"b0", b0}, {"a1", a1}, {"a0", a0}};
  Expr y = Expr::y();
  return run.finish((a1 * y + a0) / (y + b0), b);
}

CaseResult run_case(CaseKind k, const Coefficients& c, const CaseOptions& opt,
                    const std::optional<Particular>& a2, const RiccatiParticulars& parts) {
  switch (k) {
    case CaseKind::Riccati: return riccati_case(c, parts, opt);
    case CaseKind::AbelA: return abelA_solve(c, opt);
    case CaseKind::UC1: return uc1_solve(c, opt);
    case CaseKind::UC2: return uc2_solve(c, a2, opt);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown case");
}

}  // namespace ratode
