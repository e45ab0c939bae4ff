#include "ratode/reducer.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

#include "ratode/error.hpp"

namespace ratode {

namespace {

using NameSet = std::set<std::string>;

Poly normal_poly(const RatFunc& r) {
  RatFunc c = canonicalize(r);
  if (c.num.is_zero()) return {};
  return c.num.unit_normal();
}

Expr poly_to_expr(const Poly& p) { return to_expr(RatFunc(p)); }

// Unknowns hidden inside ln/arctan/exp/int arguments make a relation unusable
// as a pivot for that unknown.
bool mentioned_in_args(const Poly& p, const std::string& name) {
  for (const auto& a : p.atoms()) {
    if (!a.has_arg()) continue;
    for (const auto& [n, k] : function_occurrences(a.arg()))
      if (n == name) return true;
  }
  return false;
}

NameSet unknowns_in(const Poly& p, const NameSet& unknowns) {
  NameSet out;
  for (const auto& [n, k] : function_occurrences(RatFunc(p)))
    if (unknowns.count(n)) out.insert(n);
  return out;
}

bool has_fn(const Poly& p) { return !function_occurrences(RatFunc(p)).empty(); }

bool has_param(const Poly& p) {
  for (const auto& a : p.atoms())
    if (a.is_param()) return true;
  return false;
}

int degree_in_unknowns(const Poly& p, const NameSet& unknowns) {
  int best = 0;
  for (const auto& [m, c] : p.terms()) {
    int d = 0;
    for (const auto& [a, e] : m.factors())
      if (a.is_fn() && unknowns.count(a.name())) d += e;
    best = std::max(best, d);
  }
  return best;
}

// Sort key for variable order: later letters first, then higher index first.
std::pair<std::string, long> variable_key(const std::string& name) {
  std::size_t i = name.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(name[i - 1]))) --i;
  long idx = i < name.size() ? std::stol(name.substr(i)) : -1;
  return {name.substr(0, i), idx};
}

bool rule_is_cyclic(const Rule& r) { return highest_order(r.rhs, r.name) >= r.order; }

Expr rule_equation(const Rule& r) { return Expr::fn(r.name, r.order) - r.rhs; }

struct Pivot {
  std::size_t eq;
  std::string name;
  int order;
  Poly coeff;
  Poly rest;
};

struct BranchState {
  std::vector<Poly> eqs;
  std::vector<Rule> rules;
  std::vector<Expr> restrictions;
  std::vector<Expr> conditions;
  std::vector<Expr> residual;
  std::vector<Rule> vanishing;  // ODE coefficients forced to zero by a condition
};

class Triangularizer {
 public:
  Triangularizer(const DiffSystem& sys, int max_branches)
      : unknowns_(sys.unknowns.begin(), sys.unknowns.end()), max_branches_(max_branches) {}

  TriangularizeResult run(const DiffSystem& sys) {
    BranchState init;
    for (const auto& e : sys.equations) {
      Poly p = normal_poly(rational_form(e));
      if (!p.is_zero()) init.eqs.push_back(std::move(p));
    }
    for (const auto& e : sys.inequations) add_restriction(init, rational_form(e));
    pending_.push_back(std::move(init));
    spawned_ = 1;
    while (!pending_.empty()) {
      BranchState st = std::move(pending_.back());
      pending_.pop_back();
      // A vanishing denominator means a restricted pivot coefficient became
      // zero: the branch is empty.
      try {
        if (auto b = solve(std::move(st)))
          if (seen_.insert(b->to_json().dump()).second) result_.branches.push_back(std::move(*b));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DivisionByZero) throw;
      }
    }
    return std::move(result_);
  }

 private:
  NameSet unknowns_;
  int max_branches_;
  int spawned_ = 0;
  std::vector<BranchState> pending_;
  std::set<std::string> seen_;
  TriangularizeResult result_;

  Substitution rules_of(const BranchState& st) const {
    Substitution s;
    s.rules = st.rules;
    s.rules.insert(s.rules.end(), st.vanishing.begin(), st.vanishing.end());
    return s;
  }

  static void add_restriction(BranchState& st, const RatFunc& r) {
    RatFunc c = canonicalize(r);
    if (c.num.is_constant()) return;
    // Monomial coefficients are listed factor by factor.
    if (c.num.size() == 1) {
      for (const auto& [a, e] : c.num.leading_monomial().factors())
        st.restrictions.push_back(a.to_expr());
      return;
    }
    st.restrictions.push_back(poly_to_expr(c.num.unit_normal()));
  }

  std::optional<Pivot> choose_pivot(const BranchState& st) const {
    using Key = std::tuple<int, int, int, std::string, long, int, std::size_t>;
    std::optional<Pivot> best;
    Key best_key;
    for (std::size_t i = 0; i < st.eqs.size(); ++i) {
      const Poly& p = st.eqs[i];
      NameSet names = unknowns_in(p, unknowns_);
      int deg = degree_in_unknowns(p, unknowns_);
      for (const auto& name : names) {
        if (mentioned_in_args(p, name)) continue;
        int k = -1;
        for (const auto& a : p.atoms())
          if (a.is_fn() && a.name() == name) k = std::max(k, a.order());
        Atom atom = Atom::fn(name, k);
        if (p.degree_in(atom) != 1) continue;
        auto cs = p.coefficients_in(atom);
        const Poly& coeff = cs[1];
        int klass = coeff.is_constant() ? 0 : unknowns_in(coeff, unknowns_).empty() ? 1 : 2;
        auto vk = variable_key(name);
        // Negated so that the smallest key wins for every component.
        std::string letter_key;
        for (char ch : vk.first) letter_key.push_back(static_cast<char>(-ch));
        Key key{deg, static_cast<int>(names.size()), klass, letter_key, -vk.second, k, i};
        if (!best || key < best_key) {
          best_key = key;
          best = Pivot{i, name, k, coeff, cs[0]};
        }
      }
    }
    return best;
  }

  // Returns false when the branch is inconsistent.
  bool simplify(BranchState& st) {
    Substitution s = rules_of(st);
    if (!s.empty()) {
      for (auto& r : st.restrictions) {
        RatFunc c = canonicalize(substitute(rational_form(r), s));
        if (c.num.is_zero()) return false;
        r = poly_to_expr(c.num.unit_normal());
      }
    }
    std::size_t vanishing_before = st.vanishing.size();
    std::vector<Poly> kept;
    std::set<std::string> seen;
    for (const auto& e : st.eqs) {
      Poly p = s.empty() ? e : normal_poly(substitute(RatFunc(e), s));
      if (p.is_zero()) continue;
      if (unknowns_in(p, unknowns_).empty()) {
        if (!has_fn(p) && !has_param(p)) return false;
        if (!has_fn(p)) {
          st.residual.push_back(poly_to_expr(p));
        } else {
          st.conditions.push_back(poly_to_expr(p));
          // A condition X^k = 0 on a single coefficient is used for reduction.
          if (p.size() == 1 && p.leading_monomial().factors().size() == 1) {
            const Atom& a = p.leading_monomial().factors()[0].first;
            if (a.is_fn()) st.vanishing.push_back(Rule{a.name(), a.order(), Expr(0)});
          }
        }
        continue;
      }
      std::string key = to_string(poly_to_expr(p));
      if (seen.insert(key).second) kept.push_back(std::move(p));
    }
    st.eqs = std::move(kept);
    if (st.vanishing.size() != vanishing_before) return simplify(st);
    return true;
  }

  void add_rule(BranchState& st, Rule rule) {
    Substitution single;
    single.rules.push_back(rule);
    std::vector<Rule> kept;
    for (auto& r : st.rules) {
      if (r.name == rule.name) {
        // A lower-order solution supersedes a differential rule.
        st.eqs.push_back(normal_poly(substitute(rational_form(rule_equation(r)), single)));
        continue;
      }
      r.rhs = substitute(r.rhs, single);
      if (rule_is_cyclic(r)) {
        st.eqs.push_back(normal_poly(rational_form(rule_equation(r))));
        continue;
      }
      kept.push_back(std::move(r));
    }
    kept.push_back(std::move(rule));
    st.rules = std::move(kept);
  }

  void spawn_siblings(const BranchState& st, const Poly& coeff) {
    std::vector<Poly> factors;
    if (coeff.size() == 1) {
      for (const auto& [a, e] : coeff.leading_monomial().factors())
        if (a.is_fn() || a.is_param()) factors.push_back(Poly::atom(a));
    } else if (has_fn(coeff) || has_param(coeff)) {
      factors.push_back(coeff.unit_normal());
    }
    std::set<std::string> restricted;
    for (const auto& r : st.restrictions) restricted.insert(to_string(equation_normal_form(r)));
    for (const auto& f : factors) {
      if (restricted.count(to_string(poly_to_expr(f.unit_normal())))) continue;
      bool pending = false;
      for (const auto& e : st.eqs) pending = pending || e == f.unit_normal();
      if (pending) continue;
      if (spawned_ >= max_branches_) {
        result_.truncated = true;
        return;
      }
      BranchState sib = st;
      sib.eqs.push_back(f);
      pending_.push_back(std::move(sib));
      ++spawned_;
    }
  }

  std::optional<CaseBranch> solve(BranchState st) {
    for (int guard = 0; guard < 1000; ++guard) {
      if (!simplify(st)) return std::nullopt;
      auto pv = choose_pivot(st);
      if (!pv) break;
      if (!pv->coeff.is_constant()) {
        BranchState before = st;
        spawn_siblings(before, pv->coeff);
        add_restriction(st, RatFunc(pv->coeff));
      }
      Expr rhs = to_expr(canonicalize(RatFunc(-pv->rest, pv->coeff)));
      st.eqs.erase(st.eqs.begin() + static_cast<std::ptrdiff_t>(pv->eq));
      add_rule(st, Rule{pv->name, pv->order, rhs});
    }
    for (const auto& e : st.eqs) st.residual.push_back(poly_to_expr(e));
    st.eqs.clear();
    integrate_rules(st);
    return finish(std::move(st));
  }

  // u^(k) := R with R free of unknowns becomes u^(k-1) := int(R) + c.
  void integrate_rules(BranchState& st) {
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < st.rules.size(); ++i) {
        Rule& r = st.rules[i];
        if (r.order == 0) continue;
        bool free = true;
        for (const auto& [n, k] : function_occurrences(r.rhs))
          if (unknowns_.count(n)) free = false;
        if (!free) continue;
        std::string c = "c_" + r.name + (r.order > 1 ? "_" + std::to_string(r.order - 1) : "");
        Rule lowered{r.name, r.order - 1,
                     normalize(Expr::integral(r.rhs, Rational(0)) + Expr::param(c))};
        Substitution single;
        single.rules.push_back(lowered);
        for (std::size_t j = 0; j < st.rules.size(); ++j)
          if (j != i) st.rules[j].rhs = substitute(st.rules[j].rhs, single);
        r = lowered;
        changed = true;
      }
    }
  }

  std::optional<CaseBranch> finish(BranchState st) {
    Substitution s = rules_of(st);
    CaseBranch b;
    b.solved = st.rules;
    auto reduce_all = [&](const std::vector<Expr>& in, bool as_equations) {
      std::vector<Expr> out;
      std::set<std::string> seen;
      for (const auto& e : in) {
        Expr r = as_equations ? equation_normal_form(substitute(e, s)) : normalize(substitute(e, s));
        if (as_equations && is_zero(r)) continue;
        if (seen.insert(to_string(r)).second) out.push_back(r);
      }
      return out;
    };
    b.residual_equations = reduce_all(st.residual, true);
    std::vector<Expr> atomic, compound;
    for (const auto& c : st.conditions) {
      const Poly& n = rational_form(c).num;
      bool single = n.size() == 1 && n.leading_monomial().factors().size() == 1;
      (single ? atomic : compound).push_back(c);
    }
    b.conditions = reduce_all(compound, true);
    b.conditions.insert(b.conditions.begin(), atomic.begin(), atomic.end());
    for (const auto& c : b.conditions) {
      const RatFunc& rf = rational_form(c);
      if (rf.num.is_constant()) return std::nullopt;
    }
    std::set<std::string> seen;
    for (const auto& r : st.restrictions) {
      RatFunc c = canonicalize(substitute(rational_form(r), s));
      if (c.num.is_zero()) return std::nullopt;
      std::vector<Poly> parts;
      if (c.num.size() == 1) {
        for (const auto& [a, e] : c.num.leading_monomial().factors()) parts.push_back(Poly::atom(a));
      } else if (!c.num.is_constant()) {
        parts.push_back(c.num.unit_normal());
      }
      for (const auto& p : parts) {
        Expr e = poly_to_expr(p);
        if (seen.insert(to_string(e)).second) b.restrictions.push_back(e);
      }
    }
    for (const auto& c : b.conditions)
      if (seen.count(to_string(c))) return std::nullopt;
    for (const auto& c : b.residual_equations)
      if (seen.count(to_string(c))) return std::nullopt;
    return b;
  }
};

std::string rule_lhs(const Rule& r) {
  return r.name + std::string(static_cast<std::size_t>(r.order), '\'');
}

// ------------------------------------------------------------------ ansatz

Poly substitute_param(const Poly& p, const Atom& a, const Poly& v) {
  if (!p.contains(a)) return p;
  auto cs = p.coefficients_in(a);
  Poly out;
  for (std::size_t i = cs.size(); i-- > 0;) out = out * v + cs[i];
  return out;
}

struct ParamState {
  std::vector<Poly> eqs;
  std::map<Atom, Poly> values;  // param -> polynomial in remaining params
};

class AnsatzSearch {
 public:
  AnsatzSearch(const AnsatzOptions& opt, std::vector<Atom> params, std::vector<RatFunc> ineqs,
               std::vector<std::pair<std::string, std::vector<Atom>>> unknowns,
               std::vector<Expr> leftover)
      : opt_(opt),
        params_(std::move(params)),
        ineqs_(std::move(ineqs)),
        unknowns_(std::move(unknowns)),
        leftover_(std::move(leftover)) {}

  AnsatzResult run(ParamState st) {
    search(std::move(st));
    result_.nodes = nodes_;
    return std::move(result_);
  }

 private:
  const AnsatzOptions& opt_;
  std::vector<Atom> params_;
  std::vector<RatFunc> ineqs_;
  std::vector<std::pair<std::string, std::vector<Atom>>> unknowns_;
  std::vector<Expr> leftover_;
  AnsatzResult result_;
  std::set<std::string> seen_;
  int nodes_ = 0;

  bool done() const {
    return static_cast<int>(result_.solutions.size()) >= opt_.max_solutions || result_.exhausted;
  }

  static void assign(ParamState& st, const Atom& p, const Poly& v) {
    for (auto& e : st.eqs) e = substitute_param(e, p, v);
    for (auto& [q, val] : st.values) val = substitute_param(val, p, v);
    st.values[p] = v;
  }

  // Drops zeros and duplicates; false on a nonzero constant equation.
  static bool tidy(ParamState& st) {
    std::vector<Poly> kept;
    for (auto& e : st.eqs) {
      if (e.is_zero()) continue;
      if (e.is_constant()) return false;
      Poly n = e.unit_normal();
      bool dup = false;
      for (const auto& k : kept) dup = dup || k == n;
      if (!dup) kept.push_back(std::move(n));
    }
    st.eqs = std::move(kept);
    return true;
  }

  static bool linear_step(ParamState& st) {
    std::size_t best_eq = 0;
    std::optional<Atom> best_atom;
    std::size_t best_size = 0;
    for (std::size_t i = 0; i < st.eqs.size(); ++i) {
      const Poly& e = st.eqs[i];
      if (best_atom && e.size() >= best_size) continue;
      for (const auto& a : e.atoms()) {
        if (e.degree_in(a) != 1) continue;
        if (!e.coefficients_in(a)[1].is_constant()) continue;
        best_eq = i;
        best_atom = a;
        best_size = e.size();
        break;
      }
    }
    if (!best_atom) return false;
    auto cs = st.eqs[best_eq].coefficients_in(*best_atom);
    Poly v = cs[0].scaled(Rational(-1) / cs[1].constant_value());
    st.eqs.erase(st.eqs.begin() + static_cast<std::ptrdiff_t>(best_eq));
    assign(st, *best_atom, v);
    return true;
  }

  void search(ParamState st) {
    if (done()) return;
    if (++nodes_ > opt_.max_nodes) {
      result_.exhausted = true;
      return;
    }
    for (;;) {
      if (!tidy(st)) return;
      if (st.eqs.empty()) {
        leaf(st);
        return;
      }
      if (!linear_step(st)) break;
    }
    // Branch on the atom occurring in the most equations.
    std::map<Atom, int> count;
    for (const auto& e : st.eqs)
      for (const auto& a : e.atoms()) ++count[a];
    Atom pick = count.begin()->first;
    int best = 0;
    for (const auto& [a, c] : count)
      if (c > best) {
        best = c;
        pick = a;
      }
    for (const auto& v : opt_.pin_values) {
      if (done()) return;
      ParamState child = st;
      assign(child, pick, Poly(v));
      search(std::move(child));
    }
  }

  void leaf(const ParamState& st) {
    std::vector<Atom> free;
    for (const auto& p : params_)
      if (!st.values.count(p)) free.push_back(p);
    // All free constants 0 first, then a single 1 in each position.
    for (std::size_t choice = 0; choice <= free.size(); ++choice) {
      ParamState fin = st;
      for (std::size_t i = 0; i < free.size(); ++i)
        assign(fin, free[i], Poly(Rational(choice == i + 1 ? 1 : 0)));
      if (accept(fin)) return;
    }
  }

  bool accept(const ParamState& st) {
    Substitution s;
    for (const auto& [a, v] : st.values) s.param(a.name(), poly_to_expr(v));
    for (const auto& iq : ineqs_)
      if (canonicalize(substitute(iq, s)).num.is_zero()) return false;
    AnsatzSolution sol;
    for (const auto& [name, coeffs] : unknowns_) {
      Poly u;
      for (std::size_t j = 0; j < coeffs.size(); ++j)
        u += st.values.at(coeffs[j]).times_term(Monomial::of(Atom::x(), static_cast<int>(j)), Rational(1));
      sol.assignments[name] = poly_to_expr(u);
    }
    sol.leftover = leftover_;
    std::string key;
    for (const auto& [n, e] : sol.assignments) key += n + "=" + to_string(e) + ";";
    if (seen_.insert(key).second) result_.solutions.push_back(std::move(sol));
    return true;
  }
};

}  // namespace

Substitution CaseBranch::substitution() const {
  Substitution s;
  s.rules = solved;
  return s;
}

nlohmann::json CaseBranch::to_json() const {
  nlohmann::json j;
  j["solved"] = nlohmann::json::array();
  for (const auto& r : solved) j["solved"].push_back(rule_lhs(r) + " = " + to_string(r.rhs));
  auto list = [](const std::vector<Expr>& v, const char* suffix) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& e : v) a.push_back(to_string(e) + suffix);
    return a;
  };
  j["residual_equations"] = list(residual_equations, " = 0");
  j["conditions"] = list(conditions, " = 0");
  j["restrictions"] = list(restrictions, " <> 0");
  return j;
}

TriangularizeResult triangularize(const DiffSystem& sys, int max_branches) {
  if (max_branches < 1) throw Error(ErrorCode::InvalidArgument, "max_branches must be positive");
  return Triangularizer(sys, max_branches).run(sys);
}

Substitution AnsatzSolution::substitution() const {
  Substitution s;
  for (const auto& [n, e] : assignments) s.set(n, e);
  return s;
}

nlohmann::json AnsatzSolution::to_json() const {
  nlohmann::json j;
  j["assignments"] = nlohmann::json::object();
  for (const auto& [n, e] : assignments) j["assignments"][n] = to_string(e);
  j["leftover"] = nlohmann::json::array();
  for (const auto& e : leftover) j["leftover"].push_back(to_string(e) + " = 0");
  return j;
}

AnsatzResult ansatz_solve(const DiffSystem& sys, int d, const AnsatzOptions& opt) {
  if (d < 0) throw Error(ErrorCode::InvalidArgument, "ansatz degree must be non-negative");
  Substitution s;
  std::vector<Atom> params;
  std::vector<std::pair<std::string, std::vector<Atom>>> unknowns;
  for (const auto& u : sys.unknowns) {
    std::vector<Atom> coeffs;
    std::vector<Expr> terms;
    for (int j = 0; j <= d; ++j) {
      std::string pn = u + "_" + std::to_string(j);
      coeffs.push_back(Atom::param(pn));
      terms.push_back(Expr::param(pn) * Expr::pow(Expr::x(), j));
    }
    params.insert(params.end(), coeffs.begin(), coeffs.end());
    unknowns.emplace_back(u, coeffs);
    s.set(u, Expr::add(terms));
  }

  ParamState st;
  std::vector<Expr> leftover;
  for (const auto& e : sys.equations) {
    Poly p = normal_poly(substitute(rational_form(e), s));
    if (p.is_zero()) continue;
    if (!has_param(p)) {
      if (!has_fn(p)) return {};  // contradiction for every ansatz
      leftover.push_back(poly_to_expr(p));
      continue;
    }
    // Collect coefficients of the non-constant part of each monomial.
    std::map<Monomial, Poly, MonomialGreater> groups;
    for (const auto& [m, c] : p.terms()) {
      std::vector<Monomial::Factor> outer, inner;
      for (const auto& f : m.factors()) (f.first.is_param() ? inner : outer).push_back(f);
      groups[Monomial(std::move(outer))].add_term(Monomial(std::move(inner)), c);
    }
    for (auto& [m, g] : groups) st.eqs.push_back(std::move(g));
  }
  std::vector<RatFunc> ineqs;
  for (const auto& e : sys.inequations) ineqs.push_back(substitute(rational_form(e), s));

  return AnsatzSearch(opt, std::move(params), std::move(ineqs), std::move(unknowns),
                      std::move(leftover))
      .run(std::move(st));
}

}  // namespace ratode
