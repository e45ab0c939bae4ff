#include "ratode/polyy.hpp"

#include <algorithm>

#include "ratode/error.hpp"

namespace ratode {

namespace {

bool y_inside_atoms(const Poly& p) {
  for (const auto& a : p.atoms())
    if (a.has_arg() && depends_on_y(a.arg())) return true;
  return false;
}

std::vector<Expr> y_coefficients(const Poly& p) {
  std::vector<Expr> out;
  for (const auto& c : p.coefficients_in(Atom::y())) out.push_back(ratode::to_expr(canonicalize(RatFunc(c))));
  return out;
}

}  // namespace

PolyY::PolyY(std::vector<Expr> coeffs) {
  c_.reserve(coeffs.size());
  for (auto& e : coeffs) c_.push_back(normalize(e));
}

PolyY PolyY::monomial(const Expr& c, int power) {
  std::vector<Expr> v(static_cast<std::size_t>(power) + 1, Expr(0));
  v.back() = c;
  return PolyY(std::move(v));
}

PolyY PolyY::from_rational(const RatFunc& r) {
  if (r.den.contains(Atom::y()) || y_inside_atoms(r.den) || y_inside_atoms(r.num))
    throw Error(ErrorCode::NotPolynomialInY, "expression is not polynomial in y");
  PolyY out;
  RatFunc d(r.den);
  for (const auto& c : r.num.coefficients_in(Atom::y())) out.c_.push_back(ratode::to_expr(canonicalize(RatFunc(c) / d)));
  return out;
}

PolyY PolyY::from_expr(const Expr& e) { return from_rational(canonicalize(rational_form(e))); }

Expr PolyY::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return Expr(0);
  return c_[static_cast<std::size_t>(k)];
}

int PolyY::degree() const {
  for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k)
    if (!ratode::is_zero(c_[static_cast<std::size_t>(k)])) return k;
  return -1;
}

PolyY PolyY::trim() const {
  PolyY r = *this;
  r.c_.resize(static_cast<std::size_t>(degree() + 1));
  return r;
}

Expr PolyY::to_expr() const {
  std::vector<Expr> terms;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero_literal()) continue;
    terms.push_back(k == 0 ? c_[k] : c_[k] * Expr::pow(Expr::y(), static_cast<int>(k)));
  }
  return normalize(Expr::add(std::move(terms)));
}

RatFunc PolyY::rational() const { return rational_form(to_expr()); }

PolyY PolyY::operator+(const PolyY& o) const {
  std::vector<Expr> v(std::max(c_.size(), o.c_.size()), Expr(0));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
  return PolyY(std::move(v));
}

PolyY PolyY::operator-() const {
  std::vector<Expr> v;
  for (const auto& c : c_) v.push_back(-c);
  return PolyY(std::move(v));
}

PolyY PolyY::operator-(const PolyY& o) const { return *this + (-o); }

PolyY PolyY::operator*(const PolyY& o) const {
  if (c_.empty() || o.c_.empty()) return PolyY();
  std::vector<std::vector<Expr>> acc(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) acc[i + j].push_back(c_[i] * o.c_[j]);
  std::vector<Expr> v;
  for (auto& terms : acc) v.push_back(Expr::add(std::move(terms)));
  return PolyY(std::move(v));
}

PolyY PolyY::scaled(const Expr& c) const {
  std::vector<Expr> v;
  for (const auto& e : c_) v.push_back(c * e);
  return PolyY(std::move(v));
}

PolyY PolyY::diff_x() const {
  std::vector<Expr> v;
  for (const auto& e : c_) v.push_back(diff(e));
  return PolyY(std::move(v));
}

PolyY PolyY::diff_y() const {
  std::vector<Expr> v;
  for (std::size_t k = 1; k < c_.size(); ++k) v.push_back(Expr(static_cast<long>(k)) * c_[k]);
  return PolyY(std::move(v));
}

bool operator==(const PolyY& a, const PolyY& b) {
  int da = a.degree();
  if (da != b.degree()) return false;
  for (int k = 0; k <= da; ++k)
    if (!is_zero(a.coeff(k) - b.coeff(k))) return false;
  return true;
}

std::optional<PolyY> try_divide(const PolyY& p, const PolyY& d) {
  const int dd = d.degree();
  if (dd < 0) throw Error(ErrorCode::DivisionByZero, "division by the zero polynomial");
  PolyY r = p.trim();
  int dr = r.degree();
  if (dr < dd) {
    if (dr < 0) return PolyY();
    return std::nullopt;
  }
  std::vector<Expr> q(static_cast<std::size_t>(dr - dd) + 1, Expr(0));
  const Expr lead = d.coeff(dd);
  while ((dr = r.degree()) >= dd) {
    Expr t = normalize(r.coeff(dr) / lead);
    q[static_cast<std::size_t>(dr - dd)] = t;
    r = (r - d * PolyY::monomial(t, dr - dd)).trim();
    if (r.degree() >= dr) return std::nullopt;  // leading term failed to cancel
  }
  if (!r.is_zero()) return std::nullopt;
  return PolyY(std::move(q));
}

PolyY divide_exact(const PolyY& p, const PolyY& d) {
  if (auto q = try_divide(p, d)) return *q;
  throw Error(ErrorCode::DivisionInexact, "polynomial division in y leaves a nonzero remainder");
}

// ---------------------------------------------------------------- RatY

RatY::RatY(PolyY n, PolyY d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw Error(ErrorCode::ZeroDenominator, "denominator is the zero polynomial");
}

RatFunc RatY::rational() const { return num.rational() / den.rational(); }

Expr RatY::to_expr() const { return normalize(Expr::div(num.to_expr(), den.to_expr())); }

RatY RatY::from_rational(const RatFunc& r) {
  if (y_inside_atoms(r.num) || y_inside_atoms(r.den))
    throw Error(ErrorCode::NotPolynomialInY, "expression is not rational in y");
  return RatY(PolyY(y_coefficients(r.num)), PolyY(y_coefficients(r.den)));
}

RatY RatY::from_expr(const Expr& e) { return normalized_ratio(rational_form(e)); }

RatY normalized_ratio(const RatFunc& in) {
  RatFunc r = canonicalize(in);
  if (y_inside_atoms(r.num) || y_inside_atoms(r.den))
    throw Error(ErrorCode::NotPolynomialInY, "expression is not rational in y");
  // sign: highest y-coefficient of the denominator leads positively
  std::vector<Poly> dc = r.den.coefficients_in(Atom::y());
  if (sgn(dc.back().leading_coeff()) < 0) r = RatFunc(-r.num, -r.den);
  return RatY::from_rational(r);
}

RatY normalize_rat(const RatY& r) { return normalized_ratio(r.rational()); }

}  // namespace ratode
