#include "ratode/matcher.hpp"

#include <algorithm>
#include <set>

#include "ratode/error.hpp"

namespace ratode {

std::string mode_name(MatchMode m) { return m == MatchMode::Strict ? "strict" : "projective"; }

MatchMode parse_mode(const std::string& s) {
  if (s == "strict") return MatchMode::Strict;
  if (s == "projective") return MatchMode::Projective;
  throw Error(ErrorCode::InvalidArgument, "mode must be strict or projective, got '" + s + "'");
}

nlohmann::json DiffSystem::to_json() const {
  nlohmann::json j;
  j["mode"] = mode_name(mode);
  j["unknowns"] = unknowns;
  j["coefficients"] = coefficients;
  auto eqs = nlohmann::json::array();
  for (const auto& e : equations) eqs.push_back(to_string(e) + " = 0");
  j["equations"] = eqs;
  auto ins = nlohmann::json::array();
  for (const auto& e : inequations) ins.push_back(to_string(e) + " <> 0");
  j["inequations"] = ins;
  auto prov = nlohmann::json::array();
  for (const auto& t : provenance) prov.push_back({{"power", t.power}, {"side", t.side}});
  j["provenance"] = prov;
  return j;
}

namespace {

void check_degrees(const Structure& s, const OdeSpec& ode) {
  DegreeBounds b = degree_bounds(s.profile());
  if (ode.num_degree() > b.n_P_max || ode.den_degree() > std::max(0, b.n_Q_max))
    throw Error(ErrorCode::DegreeMismatch,
                "structure " + s.profile().to_string() + " reaches numerator degree " + std::to_string(b.n_P_max) +
                    " and denominator degree " + std::to_string(std::max(0, b.n_Q_max)) + ", ODE has " +
                    std::to_string(ode.num_degree()) + " and " + std::to_string(ode.den_degree()));
}

DiffSystem start(const Structure& s, const OdeSpec& ode, MatchMode mode) {
  DiffSystem sys;
  sys.mode = mode;
  sys.unknowns = s.unknowns();
  std::set<std::string> coeffs;
  for (const auto& [n, k] : function_occurrences(ode.f.rational())) coeffs.insert(n);
  sys.coefficients.assign(coeffs.begin(), coeffs.end());
  return sys;
}

void add(DiffSystem& sys, const Expr& e, int power, const char* side) {
  Expr n = equation_normal_form(e);
  if (n.is_zero_literal()) return;
  sys.equations.push_back(n);
  sys.provenance.push_back({power, side});
}

void add_inequation(DiffSystem& sys, const PolyY& den) {
  Expr d = den.to_expr();
  if (!d.is_const()) sys.inequations.push_back(equation_normal_form(d));
}

}  // namespace

DiffSystem match_strict(const Structure& s, const OdeSpec& ode) {
  check_degrees(s, ode);
  RatY fs = build_f(s);
  DiffSystem sys = start(s, ode, MatchMode::Strict);
  const RatY& fo = ode.f;
  if (fs.den.degree() == 0 && fo.den.degree() == 0) {
    const Expr ds = fs.den.coeff(0), dn = fo.den.coeff(0);
    for (int k = std::max(fs.num.stored_degree(), fo.num.stored_degree()); k >= 0; --k)
      add(sys, fs.num.coeff(k) * dn - fo.num.coeff(k) * ds, k, "num");
  } else {
    for (int k = std::max(fs.num.stored_degree(), fo.num.stored_degree()); k >= 0; --k)
      add(sys, fs.num.coeff(k) - fo.num.coeff(k), k, "num");
    for (int k = std::max(fs.den.stored_degree(), fo.den.stored_degree()); k >= 0; --k)
      add(sys, fs.den.coeff(k) - fo.den.coeff(k), k, "den");
  }
  add_inequation(sys, fs.den);
  return sys;
}

DiffSystem match_projective(const Structure& s, const OdeSpec& ode) {
  check_degrees(s, ode);
  RatY fs = build_f(s);
  DiffSystem sys = start(s, ode, MatchMode::Projective);
  PolyY cross = fs.num * ode.f.den - ode.f.num * fs.den;
  for (int k = cross.stored_degree(); k >= 0; --k) add(sys, cross.coeff(k), k, "cross");
  add_inequation(sys, fs.den);
  return sys;
}

DiffSystem match(const Structure& s, const OdeSpec& ode, MatchMode mode) {
  return mode == MatchMode::Strict ? match_strict(s, ode) : match_projective(s, ode);
}

}  // namespace ratode
