#include "ratode/algebra.hpp"

#include <functional>

#include "ratode/error.hpp"

namespace ratode {

namespace {

// Above this many terms the gcd is skipped; results stay correct, only larger.
constexpr std::size_t kGcdBudget = 4000;

}  // namespace

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational function with zero denominator");
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den == b.den) return reduce(RatFunc(a.num + b.num, a.den));
  if (b.den.is_one()) return RatFunc(a.num + b.num * a.den, a.den);
  if (a.den.is_one()) return RatFunc(a.num * b.den + b.num, b.den);
  if (a.den.size() >= b.den.size()) {
    if (auto q = a.den.divide_exact(b.den)) return reduce(RatFunc(a.num + b.num * *q, a.den));
  } else if (auto q = b.den.divide_exact(a.den)) {
    return reduce(RatFunc(a.num * *q + b.num, b.den));
  }
  return reduce(RatFunc(a.num * b.den + b.num * a.den, a.den * b.den));
}

RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num, a.den); }
RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num * b.num);
  return reduce(RatFunc(a.num * b.num, a.den * b.den));
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by an expression that is identically zero");
  if (a.den == b.den) return reduce(RatFunc(a.num, b.num));
  if (a.num == b.num) return reduce(RatFunc(b.den, a.den));
  return reduce(RatFunc(a.num * b.den, a.den * b.num));
}

RatFunc pow(const RatFunc& r, int e) {
  if (e < 0) {
    if (r.is_zero()) throw Error(ErrorCode::DivisionByZero, "negative power of zero");
    return reduce(RatFunc(pow(r.den, static_cast<unsigned>(-e)), pow(r.num, static_cast<unsigned>(-e))));
  }
  return RatFunc(pow(r.num, static_cast<unsigned>(e)), pow(r.den, static_cast<unsigned>(e)));
}

RatFunc reduce(RatFunc r) {
  if (r.num.is_zero()) return RatFunc();
  if (r.den.is_constant()) {
    if (!r.den.is_one()) r = RatFunc(r.num.scaled(1 / r.den.constant_value()));
    return r;
  }
  Monomial g = Monomial::gcd(r.num.monomial_content(), r.den.monomial_content());
  if (!g.is_one()) {
    Poly m = Poly::term(g, Rational(1));
    r.num = *r.num.divide_exact(m);
    r.den = *r.den.divide_exact(m);
  }
  if (auto q = r.num.divide_exact(r.den)) return RatFunc(std::move(*q));
  Rational lc = r.den.leading_coeff();
  if (lc != 1) {
    r.num = r.num.scaled(1 / lc);
    r.den = r.den.scaled(1 / lc);
  }
  return r;
}

RatFunc canonicalize(const RatFunc& in) {
  RatFunc r = reduce(in);
  if (r.den.is_constant()) return r;
  if (r.num.size() + r.den.size() <= kGcdBudget) {
    Poly g = gcd(r.num, r.den);
    if (!g.is_constant()) {
      r.num = *r.num.divide_exact(g);
      r.den = *r.den.divide_exact(g);
      if (r.den.is_constant()) return RatFunc(r.num.scaled(1 / r.den.constant_value()));
    }
  }
  // joint integer content, positive leading denominator coefficient
  Integer gn = 0, l = 1;
  for (const Poly* p : {&r.num, &r.den}) {
    for (const auto& [m, c] : p->terms()) {
      mpz_gcd(gn.get_mpz_t(), gn.get_mpz_t(), c.get_num_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
  }
  Rational q(abs(gn), l);
  q.canonicalize();
  if (sgn(r.den.leading_coeff()) < 0) q = -q;
  if (q != 1) {
    r.num = r.num.scaled(1 / q);
    r.den = r.den.scaled(1 / q);
  }
  return r;
}

// ---------------------------------------------------------------- conversion

namespace {

std::shared_ptr<ExprNode> node_of(ExprKind k, std::vector<Expr> args, Rational value = Rational(0)) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->args = std::move(args);
  n->value = std::move(value);
  n->approx = to_double(n->value);
  return n;
}

Expr monomial_expr(const Monomial& m) {
  std::vector<Expr> f;
  for (const auto& [a, e] : m.factors()) f.push_back(Expr::pow(a.to_expr(), e));
  return Expr::mul(std::move(f));
}

Expr poly_expr(const Poly& p) {
  if (p.is_zero()) return Expr(0);
  std::vector<Expr> terms;
  for (const auto& [m, c] : p.terms()) {
    if (m.is_one()) {
      terms.emplace_back(c);
    } else if (c == 1) {
      terms.push_back(monomial_expr(m));
    } else if (c == -1) {
      terms.push_back(Expr::neg(monomial_expr(m)));
    } else {
      std::vector<Expr> f{Expr(c)};
      for (const auto& [a, e] : m.factors()) f.push_back(Expr::pow(a.to_expr(), e));
      terms.push_back(Expr::make(ExprKind::Mul, std::move(f)));
    }
  }
  return Expr::add(std::move(terms));
}

Expr seeded(const Expr& e, const RatFunc& r) {
  auto n = node_of(e.kind(), e.args(), e.value());
  n->name = e.name();
  n->order = e.order();
  return Expr::with_cache(std::move(n), std::make_shared<const RatFunc>(r));
}

RatFunc compute_rational_form(const Expr& e) {
  const auto& a = e.args();
  switch (e.kind()) {
    case ExprKind::Const: return RatFunc(Poly(e.value()));
    case ExprKind::X: return RatFunc(Poly::atom(Atom::x()));
    case ExprKind::Y: return RatFunc(Poly::atom(Atom::y()));
    case ExprKind::Fn: return RatFunc(Poly::atom(Atom::fn(e.name(), e.order())));
    case ExprKind::Param: return RatFunc(Poly::atom(Atom::param(e.name())));
    case ExprKind::Add: {
      RatFunc s;
      for (const auto& t : a) s = s + rational_form(t);
      return s;
    }
    case ExprKind::Mul: {
      RatFunc p(Poly(Rational(1)));
      for (const auto& t : a) {
        p = p * rational_form(t);
        if (p.is_zero()) break;
      }
      return p;
    }
    case ExprKind::Pow: return pow(rational_form(a[0]), e.order());
    case ExprKind::Neg: return -rational_form(a[0]);
    case ExprKind::Div: return rational_form(a[0]) / rational_form(a[1]);
    case ExprKind::Ln: {
      RatFunc u = canonicalize(rational_form(a[0]));
      if (u.is_zero()) throw Error(ErrorCode::DivisionByZero, "ln of an expression that is identically zero");
      if (u.is_polynomial() && u.num.is_one()) return RatFunc();
      return RatFunc(Poly::atom(Atom::ln(to_expr(u))));
    }
    case ExprKind::Arctan: {
      RatFunc u = canonicalize(rational_form(a[0]));
      if (u.is_zero()) return RatFunc();
      return RatFunc(Poly::atom(Atom::arctan(to_expr(u))));
    }
    case ExprKind::Exp: {
      RatFunc u = canonicalize(rational_form(a[0]));
      if (u.is_zero()) return RatFunc(Poly(Rational(1)));
      return RatFunc(Poly::atom(Atom::exp(to_expr(u))));
    }
    case ExprKind::Int: {
      RatFunc g = canonicalize(rational_form(a[0]));
      if (g.is_zero()) return RatFunc();
      return RatFunc(Poly::atom(Atom::integral(to_expr(g), e.value())));
    }
  }
  return RatFunc();
}

}  // namespace

const RatFunc& rational_form(const Expr& e) {
  const ExprNode& n = e.node();
  std::call_once(n.cache_once, [&] {
    if (!n.cache) n.cache = std::make_shared<const RatFunc>(compute_rational_form(e));
  });
  return *n.cache;
}

Expr to_expr(const RatFunc& r) {
  if (r.is_zero()) return Expr(0);
  Expr num = poly_expr(r.num);
  if (r.den.is_one()) return seeded(num, r);
  return seeded(Expr::div(num, poly_expr(r.den)), r);
}

Expr normalize(const Expr& e) { return to_expr(canonicalize(rational_form(e))); }

bool is_zero(const Expr& e) { return rational_form(e).is_zero(); }
bool is_zero(const RatFunc& r) { return r.is_zero(); }

// ---------------------------------------------------------------- derivatives

namespace {

std::optional<RatFunc> atom_derivative(const Atom& a, Var v) {
  switch (a.kind()) {
    case AtomKind::X:
      return v == Var::X ? std::optional<RatFunc>(RatFunc(Poly(Rational(1)))) : std::nullopt;
    case AtomKind::Y:
      return v == Var::Y ? std::optional<RatFunc>(RatFunc(Poly(Rational(1)))) : std::nullopt;
    case AtomKind::Fn:
      if (v == Var::Y) return std::nullopt;
      return RatFunc(Poly::atom(Atom::fn(a.name(), a.order() + 1)));
    case AtomKind::Param: return std::nullopt;
    case AtomKind::Ln: {
      const RatFunc& u = rational_form(a.arg());
      RatFunc du = derivative(u, v);
      if (du.is_zero()) return std::nullopt;
      return du / u;
    }
    case AtomKind::Arctan: {
      const RatFunc& u = rational_form(a.arg());
      RatFunc du = derivative(u, v);
      if (du.is_zero()) return std::nullopt;
      return du / (RatFunc(Poly(Rational(1))) + u * u);
    }
    case AtomKind::Exp: {
      RatFunc du = derivative(rational_form(a.arg()), v);
      if (du.is_zero()) return std::nullopt;
      return RatFunc(Poly::atom(a)) * du;
    }
    case AtomKind::Int:
      if (v == Var::X) return rational_form(a.arg());
      if (depends_on_y(a.arg()))
        throw Error(ErrorCode::InvalidArgument, "y-derivative of an integral whose integrand depends on y");
      return std::nullopt;
  }
  return std::nullopt;
}

RatFunc poly_derivative(const Poly& p, Var v) {
  Poly poly_part;
  RatFunc rest;
  for (const auto& a : p.atoms()) {
    auto da = atom_derivative(a, v);
    if (!da || da->is_zero()) continue;
    Poly pa = p.partial(a);
    if (da->is_polynomial())
      poly_part += pa * da->num;
    else
      rest = rest + RatFunc(pa) * *da;
  }
  return rest + RatFunc(poly_part);
}

}  // namespace

RatFunc derivative(const RatFunc& r, Var v) {
  RatFunc dn = poly_derivative(r.num, v);
  if (r.den.is_one()) return dn;
  RatFunc dd = poly_derivative(r.den, v);
  if (dd.is_zero()) return dn / RatFunc(r.den);
  // (n'd - n d') / d^2
  return (dn * RatFunc(r.den) - RatFunc(r.num) * dd) / RatFunc(r.den * r.den);
}

Expr diff(const Expr& e, int order) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "negative derivative order");
  RatFunc r = rational_form(e);
  for (int i = 0; i < order; ++i) r = derivative(r, Var::X);
  return to_expr(canonicalize(r));
}

Expr diff_y(const Expr& e, int order) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "negative derivative order");
  RatFunc r = rational_form(e);
  for (int i = 0; i < order; ++i) r = derivative(r, Var::Y);
  return to_expr(canonicalize(r));
}

// ---------------------------------------------------------------- substitution

namespace {

class Substituter {
 public:
  explicit Substituter(const Substitution& s) : s_(s) {}

  RatFunc apply(const RatFunc& r) {
    if (++depth_ > 64) throw Error(ErrorCode::InvalidArgument, "substitution rules are cyclic");
    RatFunc out = apply_impl(r);
    --depth_;
    return out;
  }

 private:
  const Substitution& s_;
  int depth_ = 0;
  std::map<Atom, std::optional<RatFunc>> memo_;

  RatFunc apply_impl(const RatFunc& r) {
    std::map<Atom, RatFunc> repl;
    for (const Poly* p : {&r.num, &r.den})
      for (const auto& a : p->atoms())
        if (!repl.count(a))
          if (auto v = replacement(a)) repl.emplace(a, std::move(*v));
    if (repl.empty()) return r;
    auto [nn, nd] = eval(r.num, repl);
    if (r.den.is_one()) return reduce(RatFunc(std::move(nn), std::move(nd)));
    auto [dn, dd] = eval(r.den, repl);
    if (dn.is_zero()) throw Error(ErrorCode::DivisionByZero, "substitution makes a denominator vanish");
    return reduce(RatFunc(nn * dd, nd * dn));
  }

  // numerator and denominator of p with atoms replaced
  std::pair<Poly, Poly> eval(const Poly& p, const std::map<Atom, RatFunc>& repl) {
    std::map<Atom, int> max_e;
    for (const auto& [m, c] : p.terms())
      for (const auto& [a, e] : m.factors())
        if (repl.count(a)) max_e[a] = std::max(max_e[a], e);
    Poly den(Rational(1));
    for (const auto& [a, e] : max_e)
      if (!repl.at(a).den.is_one()) den = den * pow(repl.at(a).den, static_cast<unsigned>(e));

    std::map<std::pair<Atom, int>, Poly> powcache;
    auto power = [&](const Poly& base, const Atom& a, int e, int tag) -> const Poly& {
      auto key = std::make_pair(a, e * 2 + tag);
      auto it = powcache.find(key);
      if (it == powcache.end()) it = powcache.emplace(key, pow(base, static_cast<unsigned>(e))).first;
      return it->second;
    };

    Poly num;
    for (const auto& [m, c] : p.terms()) {
      std::vector<Monomial::Factor> keep;
      Poly t(c);
      for (const auto& [a, e] : m.factors()) {
        auto it = repl.find(a);
        if (it == repl.end()) {
          keep.emplace_back(a, e);
          continue;
        }
        t = t * power(it->second.num, a, e, 0);
        int rest = max_e[a] - e;
        if (rest > 0 && !it->second.den.is_one()) t = t * power(it->second.den, a, rest, 1);
      }
      for (const auto& [a, e] : max_e) {
        if (m.degree_in(a) == 0 && !repl.at(a).den.is_one()) t = t * power(repl.at(a).den, a, e, 1);
      }
      num += t.times_term(Monomial(std::move(keep)), Rational(1));
    }
    return {std::move(num), std::move(den)};
  }

  std::optional<RatFunc> replacement(const Atom& a) {
    if (auto it = memo_.find(a); it != memo_.end()) return it->second;
    std::optional<RatFunc> out = compute(a);
    memo_.emplace(a, out);
    return out;
  }

  std::optional<RatFunc> compute(const Atom& a) {
    switch (a.kind()) {
      case AtomKind::Fn: {
        const Rule* best = nullptr;
        for (const auto& rule : s_.rules)
          if (rule.name == a.name() && rule.order <= a.order() && (!best || rule.order > best->order))
            best = &rule;
        if (!best) return std::nullopt;
        RatFunc v = rational_form(best->rhs);
        for (int k = best->order; k < a.order(); ++k) v = derivative(apply(v), Var::X);
        return apply(v);
      }
      case AtomKind::Param: {
        auto it = s_.params.find(a.name());
        if (it == s_.params.end()) return std::nullopt;
        return apply(rational_form(it->second));
      }
      case AtomKind::Ln:
      case AtomKind::Arctan:
      case AtomKind::Exp:
      case AtomKind::Int: {
        const RatFunc& arg = rational_form(a.arg());
        RatFunc na = apply(arg);
        if (na.num == arg.num && na.den == arg.den) return std::nullopt;
        Expr ne = to_expr(canonicalize(na));
        switch (a.kind()) {
          case AtomKind::Ln: return rational_form(Expr::ln(ne));
          case AtomKind::Arctan: return rational_form(Expr::arctan(ne));
          case AtomKind::Exp: return rational_form(Expr::exp(ne));
          default: return rational_form(Expr::integral(ne, a.anchor()));
        }
      }
      default: return std::nullopt;
    }
  }
};

}  // namespace

RatFunc substitute(const RatFunc& r, const Substitution& s) {
  if (s.empty()) return r;
  return Substituter(s).apply(r);
}

Expr substitute(const Expr& e, const Substitution& s) {
  if (s.empty()) return e;
  return to_expr(canonicalize(substitute(rational_form(e), s)));
}

// ---------------------------------------------------------------- queries

namespace {

void walk_atoms(const RatFunc& r, const std::function<void(const Atom&)>& f) {
  for (const Poly* p : {&r.num, &r.den})
    for (const auto& a : p->atoms()) {
      f(a);
      if (a.has_arg()) walk_atoms(rational_form(a.arg()), f);
    }
}

}  // namespace

std::set<std::pair<std::string, int>> function_occurrences(const RatFunc& r) {
  std::set<std::pair<std::string, int>> out;
  walk_atoms(r, [&](const Atom& a) {
    if (a.is_fn()) out.emplace(a.name(), a.order());
  });
  return out;
}

std::set<std::pair<std::string, int>> function_occurrences(const Expr& e) {
  return function_occurrences(rational_form(e));
}

std::set<std::string> param_names(const Expr& e) {
  std::set<std::string> out;
  walk_atoms(rational_form(e), [&](const Atom& a) {
    if (a.is_param()) out.insert(a.name());
  });
  return out;
}

bool depends_on_y(const Expr& e) {
  bool found = false;
  walk_atoms(rational_form(e), [&](const Atom& a) { found = found || a.kind() == AtomKind::Y; });
  return found;
}

bool depends_on_x(const Expr& e) {
  bool found = false;
  walk_atoms(rational_form(e), [&](const Atom& a) {
    found = found || a.kind() == AtomKind::X || a.kind() == AtomKind::Fn || a.kind() == AtomKind::Int;
  });
  return found;
}

int highest_order(const Expr& e, const std::string& name) {
  int best = -1;
  for (const auto& [n, k] : function_occurrences(e))
    if (n == name) best = std::max(best, k);
  return best;
}

Expr equation_normal_form(const Expr& e) {
  RatFunc r = canonicalize(rational_form(e));
  return to_expr(RatFunc(r.num.unit_normal()));
}

}  // namespace ratode
