#include "ratode/poly.hpp"

#include <algorithm>

#include "ratode/error.hpp"

namespace ratode {

// ---------------------------------------------------------------- Atom

namespace {

std::shared_ptr<const AtomData> make_atom(AtomKind k, std::string name = {}, int order = 0,
                                          Expr arg = Expr(), Rational anchor = Rational(0)) {
  auto d = std::make_shared<AtomData>();
  d->kind = k;
  d->name = std::move(name);
  d->order = order;
  d->arg = std::move(arg);
  d->anchor = std::move(anchor);
  return d;
}

}  // namespace

Atom Atom::x() {
  static const Atom a(make_atom(AtomKind::X));
  return a;
}

Atom Atom::y() {
  static const Atom a(make_atom(AtomKind::Y));
  return a;
}

Atom Atom::fn(std::string name, int order) { return Atom(make_atom(AtomKind::Fn, std::move(name), order)); }
Atom Atom::param(std::string name) { return Atom(make_atom(AtomKind::Param, std::move(name))); }
Atom Atom::ln(Expr a) { return Atom(make_atom(AtomKind::Ln, {}, 0, std::move(a))); }
Atom Atom::arctan(Expr a) { return Atom(make_atom(AtomKind::Arctan, {}, 0, std::move(a))); }
Atom Atom::exp(Expr a) { return Atom(make_atom(AtomKind::Exp, {}, 0, std::move(a))); }

Atom Atom::integral(Expr g, Rational anchor) {
  return Atom(make_atom(AtomKind::Int, {}, 0, std::move(g), std::move(anchor)));
}

Expr Atom::to_expr() const {
  switch (kind()) {
    case AtomKind::X: return Expr::x();
    case AtomKind::Y: return Expr::y();
    case AtomKind::Fn: return Expr::fn(name(), order());
    case AtomKind::Param: return Expr::param(name());
    case AtomKind::Ln: return Expr::ln(arg());
    case AtomKind::Arctan: return Expr::arctan(arg());
    case AtomKind::Exp: return Expr::exp(arg());
    case AtomKind::Int: return Expr::integral(arg(), anchor());
  }
  return Expr();
}

int compare(const Atom& a, const Atom& b) {
  if (a.d_ == b.d_) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case AtomKind::X:
    case AtomKind::Y: return 0;
    case AtomKind::Fn:
      if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
      // higher derivatives rank first
      if (a.order() != b.order()) return a.order() > b.order() ? -1 : 1;
      return 0;
    case AtomKind::Param: {
      int c = a.name().compare(b.name());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case AtomKind::Int:
      if (int c = compare(a.arg(), b.arg()); c != 0) return c;
      if (int c = cmp(a.anchor(), b.anchor()); c != 0) return c < 0 ? -1 : 1;
      return 0;
    default: return compare(a.arg(), b.arg());
  }
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Factor> f) : f_(std::move(f)) {
  std::sort(f_.begin(), f_.end(), [](const Factor& a, const Factor& b) { return a.first < b.first; });
  std::vector<Factor> merged;
  for (auto& fa : f_) {
    if (!merged.empty() && merged.back().first == fa.first)
      merged.back().second += fa.second;
    else
      merged.push_back(fa);
  }
  std::erase_if(merged, [](const Factor& fa) { return fa.second == 0; });
  f_ = std::move(merged);
}

Monomial Monomial::of(const Atom& a, int e) {
  Monomial m;
  if (e != 0) m.f_.emplace_back(a, e);
  return m;
}

int Monomial::degree_in(const Atom& a) const {
  for (const auto& [at, e] : f_)
    if (at == a) return e;
  return 0;
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& fa : f_) d += fa.second;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.f_.reserve(f_.size() + o.f_.size());
  auto i = f_.begin();
  auto j = o.f_.begin();
  while (i != f_.end() && j != o.f_.end()) {
    int c = compare(i->first, j->first);
    if (c < 0) {
      r.f_.push_back(*i++);
    } else if (c > 0) {
      r.f_.push_back(*j++);
    } else {
      r.f_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  r.f_.insert(r.f_.end(), i, f_.end());
  r.f_.insert(r.f_.end(), j, o.f_.end());
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  auto j = o.f_.begin();
  for (const auto& [a, e] : f_) {
    while (j != o.f_.end() && j->first < a) ++j;
    if (j == o.f_.end() || !(j->first == a) || j->second < e) return false;
  }
  return true;
}

Monomial Monomial::divided_by(const Monomial& o) const {
  Monomial r;
  auto j = o.f_.begin();
  for (const auto& [a, e] : f_) {
    int d = e;
    if (j != o.f_.end() && j->first == a) {
      d -= j->second;
      ++j;
    }
    if (d != 0) r.f_.emplace_back(a, d);
  }
  return r;
}

Monomial Monomial::without(const Atom& a) const {
  Monomial r;
  for (const auto& fa : f_)
    if (!(fa.first == a)) r.f_.push_back(fa);
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  auto j = b.f_.begin();
  for (const auto& [at, e] : a.f_) {
    while (j != b.f_.end() && j->first < at) ++j;
    if (j != b.f_.end() && j->first == at) r.f_.emplace_back(at, std::min(e, j->second));
  }
  return r;
}

int compare(const Monomial& a, const Monomial& b) {
  auto i = a.f_.begin();
  auto j = b.f_.begin();
  for (; i != a.f_.end() && j != b.f_.end(); ++i, ++j) {
    int c = compare(i->first, j->first);
    if (c != 0) return c < 0 ? 1 : -1;
    if (i->second != j->second) return i->second > j->second ? 1 : -1;
  }
  if (i != a.f_.end()) return 1;
  if (j != b.f_.end()) return -1;
  return 0;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(Monomial(), c);
}

Poly Poly::atom(const Atom& a, int e) { return term(Monomial::of(a, e), Rational(1)); }

Poly Poly::term(const Monomial& m, const Rational& c) {
  Poly p;
  if (sgn(c) != 0) p.terms_.emplace(m, c);
  return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

Rational Poly::constant_value() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second == 1;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  if (size() < o.size()) {
    Poly r = o;
    r += *this;
    return r;
  }
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  r -= o;
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  if (o.is_constant()) return scaled(o.constant_value());
  if (is_constant()) return o.scaled(constant_value());
  Poly r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  if (sgn(c) == 0) return Poly();
  Poly r = *this;
  for (auto& [m, v] : r.terms_) v *= c;
  return r;
}

Poly Poly::times_term(const Monomial& m, const Rational& c) const {
  Poly r;
  if (sgn(c) == 0) return r;
  for (const auto& [m1, c1] : terms_) r.terms_.emplace_hint(r.terms_.end(), m1 * m, c1 * c);
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return false;
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  for (; i != a.terms_.end(); ++i, ++j)
    if (compare(i->first, j->first) != 0 || i->second != j->second) return false;
  return true;
}

int compare(const Poly& a, const Poly& b) {
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  for (; i != a.terms_.end() && j != b.terms_.end(); ++i, ++j) {
    if (int c = compare(i->first, j->first); c != 0) return c;
    if (int c = cmp(i->second, j->second); c != 0) return c < 0 ? -1 : 1;
  }
  if (i != a.terms_.end()) return 1;
  if (j != b.terms_.end()) return -1;
  return 0;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (is_zero()) return Poly();
  if (d.is_constant()) return scaled(1 / d.constant_value());
  // cheap necessary conditions: extreme monomials must divide
  if (!d.leading_monomial().divides(leading_monomial())) return std::nullopt;
  if (!d.terms_.rbegin()->first.divides(terms_.rbegin()->first)) return std::nullopt;
  for (const auto& a : d.atoms())
    if (d.degree_in(a) > degree_in(a)) return std::nullopt;

  Poly q;
  Poly r = *this;
  const Monomial& dl = d.leading_monomial();
  const Rational& dc = d.leading_coeff();
  while (!r.is_zero()) {
    const Monomial& rl = r.leading_monomial();
    if (!dl.divides(rl)) return std::nullopt;
    Monomial t = rl.divided_by(dl);
    Rational c = r.leading_coeff() / dc;
    q.add_term(t, c);
    r -= d.times_term(t, c);
  }
  return q;
}

bool Poly::contains(const Atom& a) const {
  for (const auto& [m, c] : terms_)
    if (m.degree_in(a) != 0) return true;
  return false;
}

int Poly::degree_in(const Atom& a) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(a));
  return d;
}

int Poly::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

std::vector<Atom> Poly::atoms() const {
  std::vector<Atom> out;
  for (const auto& [m, c] : terms_)
    for (const auto& fa : m.factors()) out.push_back(fa.first);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Poly> Poly::coefficients_in(const Atom& a) const {
  std::vector<Poly> out(static_cast<std::size_t>(degree_in(a)) + 1);
  for (const auto& [m, c] : terms_) {
    int e = m.degree_in(a);
    out[static_cast<std::size_t>(e)].add_term(e ? m.without(a) : m, c);
  }
  while (out.size() > 1 && out.back().is_zero()) out.pop_back();
  return out;
}

Poly Poly::from_coefficients(const Atom& a, const std::vector<Poly>& c) {
  Poly r;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    Monomial m = Monomial::of(a, static_cast<int>(i));
    for (const auto& [mm, v] : c[i].terms()) r.add_term(mm * m, v);
  }
  return r;
}

Poly Poly::partial(const Atom& a) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    int e = m.degree_in(a);
    if (e == 0) continue;
    std::vector<Monomial::Factor> f;
    for (const auto& fa : m.factors()) {
      if (fa.first == a) {
        if (e > 1) f.emplace_back(a, e - 1);
      } else {
        f.push_back(fa);
      }
    }
    r.add_term(Monomial(std::move(f)), c * e);
  }
  return r;
}

Rational Poly::rational_content() const {
  if (is_zero()) return Rational(1);
  Integer g = 0, l = 1;
  for (const auto& [m, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational q(abs(g), l);
  q.canonicalize();
  return q;
}

Poly Poly::unit_normal() const {
  if (is_zero()) return Poly();
  Rational q = rational_content();
  if (sgn(leading_coeff()) < 0) q = -q;
  if (q == 1) return *this;
  return scaled(1 / q);
}

Monomial Poly::monomial_content() const {
  if (is_zero()) return Monomial();
  Monomial g = terms_.begin()->first;
  for (const auto& [m, c] : terms_) {
    if (g.is_one()) break;
    g = Monomial::gcd(g, m);
  }
  return g;
}

Poly pow(const Poly& p, unsigned e) {
  Poly result(Rational(1));
  Poly base = p;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------- gcd

namespace {

using UPoly = std::vector<Poly>;

void trim(UPoly& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

Poly content_of(const UPoly& u) {
  Poly g;
  for (const auto& c : u) {
    g = gcd(g, c);
    if (g.is_constant()) return Poly(Rational(1));
  }
  return g;
}

UPoly divided(const UPoly& u, const Poly& c) {
  if (c.is_one()) return u;
  UPoly r;
  r.reserve(u.size());
  for (const auto& p : u) r.push_back(*p.divide_exact(c));
  return r;
}

UPoly primitive(const UPoly& u) {
  UPoly r = divided(u, content_of(u));
  // rational content of the whole polynomial keeps integers small
  Integer g = 0, l = 1;
  for (const auto& p : r) {
    for (const auto& [m, c] : p.terms()) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
  }
  Rational q(abs(g), l);
  q.canonicalize();
  if (sgn(q) != 0 && q != 1)
    for (auto& p : r) p = p.scaled(1 / q);
  return r;
}

UPoly pseudo_remainder(UPoly r, const UPoly& b) {
  const std::size_t db = b.size() - 1;
  const Poly& lb = b.back();
  int e = static_cast<int>(r.size()) - static_cast<int>(db);
  while (!r.empty() && r.size() - 1 >= db) {
    Poly lr = r.back();
    std::size_t s = r.size() - 1 - db;
    for (auto& c : r) c = c * lb;
    for (std::size_t j = 0; j <= db; ++j) r[j + s] -= lr * b[j];
    trim(r);
    --e;
  }
  if (e > 0) {
    Poly f = pow(lb, static_cast<unsigned>(e));
    for (auto& c : r) c = c * f;
  }
  return r;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.unit_normal();
  if (b.is_zero()) return a.unit_normal();
  if (a.is_constant() || b.is_constant()) return Poly(Rational(1));

  Monomial ma = a.monomial_content();
  Monomial mb = b.monomial_content();
  if (a.size() == 1 || b.size() == 1) return Poly::term(Monomial::gcd(ma, mb), Rational(1));
  if (!ma.is_one() || !mb.is_one()) {
    Poly g = gcd(*a.divide_exact(Poly::term(ma, Rational(1))), *b.divide_exact(Poly::term(mb, Rational(1))));
    return g * Poly::term(Monomial::gcd(ma, mb), Rational(1));
  }

  std::vector<Atom> aa = a.atoms();
  std::vector<Atom> ba = b.atoms();
  for (const auto& v : aa)
    if (!std::binary_search(ba.begin(), ba.end(), v)) return gcd(content_of(a.coefficients_in(v)), b);
  for (const auto& v : ba)
    if (!std::binary_search(aa.begin(), aa.end(), v)) return gcd(a, content_of(b.coefficients_in(v)));

  if (a.size() <= b.size()) {
    if (b.divide_exact(a)) return a.unit_normal();
  } else if (a.divide_exact(b)) {
    return b.unit_normal();
  }

  // main variable: the common atom of least degree
  Atom v = aa.front();
  int best = std::max(a.degree_in(v), b.degree_in(v));
  for (const auto& at : aa) {
    int d = std::max(a.degree_in(at), b.degree_in(at));
    if (d < best) {
      best = d;
      v = at;
    }
  }

  UPoly ua = a.coefficients_in(v);
  UPoly ub = b.coefficients_in(v);
  Poly ca = content_of(ua);
  Poly cb = content_of(ub);
  Poly c = gcd(ca, cb);
  ua = primitive(divided(ua, ca));
  ub = primitive(divided(ub, cb));
  if (ua.size() < ub.size()) std::swap(ua, ub);

  UPoly g;
  for (;;) {
    UPoly r = pseudo_remainder(ua, ub);
    if (r.empty()) {
      g = ub;
      break;
    }
    if (r.size() == 1) {
      g = {Poly(Rational(1))};
      break;
    }
    ua = std::move(ub);
    ub = primitive(r);
  }
  g = primitive(g);
  return (c * Poly::from_coefficients(v, g)).unit_normal();
}

}  // namespace ratode
