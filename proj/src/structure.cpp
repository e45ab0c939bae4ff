#include "ratode/structure.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ratode/error.hpp"
#include "ratode/eval.hpp"
#include "ratode/parse.hpp"

namespace ratode {

// ---------------------------------------------------------------- profile

DegreeProfile DegreeProfile::parse(const std::string& text) {
  DegreeProfile d;
  d.rational = false;
  std::stringstream ss(text);
  std::string block;
  bool any = false;
  while (std::getline(ss, block, '+')) {
    auto colon = block.find(':');
    auto comma = block.find(',');
    if (colon == std::string::npos || comma == std::string::npos || comma < colon)
      throw Error(ErrorCode::ParseError, "bad profile block '" + block + "' (expected kind:n_p,n_q)");
    std::string kind = block.substr(0, colon);
    int np = 0, nq = 0;
    try {
      np = std::stoi(block.substr(colon + 1, comma - colon - 1));
      nq = std::stoi(block.substr(comma + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad degrees in profile block '" + block + "'");
    }
    if (np < 0 || nq < 0) throw Error(ErrorCode::ParseError, "negative degree in profile block '" + block + "'");
    if (kind == "rational") {
      d.rational = true;
      d.n_p1 = np;
      d.n_q1 = nq;
    } else if (kind == "log") {
      d.log = true;
      d.n_p2 = np;
      d.n_q2 = nq;
    } else if (kind == "arctan") {
      d.arctan = true;
      d.n_p3 = np;
      d.n_q3 = nq;
    } else {
      throw Error(ErrorCode::ParseError, "unknown profile block kind '" + kind + "'");
    }
    any = true;
  }
  if (!any) throw Error(ErrorCode::ParseError, "empty profile");
  return d;
}

std::string DegreeProfile::to_string() const {
  std::vector<std::string> parts;
  auto block = [](const char* k, int a, int b) { return std::string(k) + ":" + std::to_string(a) + "," + std::to_string(b); };
  if (rational) parts.push_back(block("rational", n_p1, n_q1));
  if (log) parts.push_back(block("log", n_p2, n_q2));
  if (arctan) parts.push_back(block("arctan", n_p3, n_q3));
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "+") + p;
  return out;
}

// ---------------------------------------------------------------- Structure

Structure Structure::rational(PolyY p1, PolyY q1) {
  Structure s;
  s.p1 = std::move(p1);
  s.q1 = std::move(q1);
  return s;
}

Structure& Structure::with_log(PolyY p2_, PolyY q2_, Expr a) {
  p2 = std::move(p2_);
  q2 = std::move(q2_);
  alpha = std::move(a);
  log_present = true;
  return *this;
}

Structure& Structure::with_arctan(PolyY p3_, PolyY q3_, Expr b) {
  p3 = std::move(p3_);
  q3 = std::move(q3_);
  beta = std::move(b);
  arctan_present = true;
  return *this;
}

void Structure::validate() const {
  if (q1.is_zero()) throw Error(ErrorCode::ZeroDenominator, "q1 is the zero polynomial");
  if (log_present && (p2.is_zero() || q2.is_zero()))
    throw Error(ErrorCode::ZeroDenominator, "log block has a zero polynomial");
  if (arctan_present && q3.is_zero()) throw Error(ErrorCode::ZeroDenominator, "q3 is the zero polynomial");
}

DegreeProfile Structure::profile() const {
  DegreeProfile d;
  auto deg = [](const PolyY& p) { return std::max(0, p.degree()); };
  d.rational = !p1.is_zero();
  d.n_p1 = deg(p1);
  d.n_q1 = deg(q1);
  d.log = log_present;
  if (log_present) {
    d.n_p2 = deg(p2);
    d.n_q2 = deg(q2);
  }
  d.arctan = arctan_present;
  if (arctan_present) {
    d.n_p3 = deg(p3);
    d.n_q3 = deg(q3);
  }
  return d;
}

namespace {

template <class F>
void for_each_poly(const Structure& s, F&& f) {
  f(s.p1);
  f(s.q1);
  if (s.log_present) {
    f(s.p2);
    f(s.q2);
  }
  if (s.arctan_present) {
    f(s.p3);
    f(s.q3);
  }
}

PolyY substituted(const PolyY& p, const Substitution& s) {
  std::vector<Expr> v;
  for (const auto& c : p.coeffs()) v.push_back(substitute(c, s));
  return PolyY(std::move(v));
}

nlohmann::json poly_json(const PolyY& p) {
  auto a = nlohmann::json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_string(c));
  return a;
}

PolyY poly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "structure polynomial must be an array of coefficient strings");
  std::vector<Expr> v;
  for (const auto& c : j) {
    if (c.is_string())
      v.push_back(parse_expr(c.get<std::string>()));
    else if (c.is_number_integer())
      v.emplace_back(c.get<long long>());
    else
      throw Error(ErrorCode::ParseError, "structure coefficient must be a string");
    if (depends_on_y(v.back())) throw Error(ErrorCode::ParseError, "structure coefficients must not contain y");
  }
  return PolyY(std::move(v));
}

}  // namespace

std::vector<std::string> Structure::unknowns() const {
  std::set<std::string> names;
  auto collect = [&](const Expr& e) {
    for (const auto& [n, k] : function_occurrences(e)) names.insert(n);
  };
  for_each_poly(*this, [&](const PolyY& p) {
    for (const auto& c : p.coeffs()) collect(c);
  });
  collect(alpha);
  collect(beta);
  return {names.begin(), names.end()};
}

Structure Structure::substituted(const Substitution& sub) const {
  Structure s = *this;
  s.p1 = ratode::substituted(p1, sub);
  s.q1 = ratode::substituted(q1, sub);
  s.p2 = ratode::substituted(p2, sub);
  s.q2 = ratode::substituted(q2, sub);
  s.p3 = ratode::substituted(p3, sub);
  s.q3 = ratode::substituted(q3, sub);
  s.alpha = substitute(alpha, sub);
  s.beta = substitute(beta, sub);
  return s;
}

nlohmann::json Structure::to_json() const {
  nlohmann::json j;
  j["p1"] = poly_json(p1);
  j["q1"] = poly_json(q1);
  if (log_present) {
    j["p2"] = poly_json(p2);
    j["q2"] = poly_json(q2);
    j["alpha"] = to_string(alpha);
  }
  if (arctan_present) {
    j["p3"] = poly_json(p3);
    j["q3"] = poly_json(q3);
    j["beta"] = to_string(beta);
  }
  return j;
}

Structure Structure::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "structure must be a JSON object");
  Structure s;
  if (j.contains("p1")) s.p1 = poly_from_json(j["p1"]);
  if (j.contains("q1")) s.q1 = poly_from_json(j["q1"]);
  auto constant = [](const nlohmann::json& v) {
    return v.is_string() ? parse_expr(v.get<std::string>()) : Expr(v.get<long long>());
  };
  if (j.contains("p2")) {
    s.log_present = true;
    s.p2 = poly_from_json(j["p2"]);
    if (j.contains("q2")) s.q2 = poly_from_json(j["q2"]);
    if (j.contains("alpha")) s.alpha = constant(j["alpha"]);
  }
  if (j.contains("p3")) {
    s.arctan_present = true;
    s.p3 = poly_from_json(j["p3"]);
    if (j.contains("q3")) s.q3 = poly_from_json(j["q3"]);
    if (j.contains("beta")) s.beta = constant(j["beta"]);
  }
  s.validate();
  return s;
}

Structure generic_structure(const DegreeProfile& d) {
  auto poly = [](const std::string& prefix, int n, bool fix_one) {
    if (fix_one && n == 0) return PolyY::constant(1);
    std::vector<Expr> v;
    for (int k = 0; k <= n; ++k) v.push_back(Expr::fn(prefix + std::to_string(k)));
    return PolyY(std::move(v));
  };
  Structure s;
  if (d.rational) {
    s.p1 = poly("a", d.n_p1, false);
    s.q1 = poly("b", d.n_q1, true);
  }
  if (d.log) s.with_log(poly("c", d.n_p2, false), poly("d", d.n_q2, true));
  if (d.arctan) s.with_arctan(poly("e", d.n_p3, false), poly("g", d.n_q3, true));
  return s;
}

std::vector<DegreeProfile> enumerate_profiles(int max_n) {
  std::vector<DegreeProfile> out;
  for (int mask = 1; mask < 8; ++mask) {
    bool r = mask & 1, l = mask & 2, a = mask & 4;
    for (int p1 = 0; p1 <= (r ? max_n : 0); ++p1)
      for (int q1 = 0; q1 <= (r ? max_n : 0); ++q1)
        for (int p2 = 0; p2 <= (l ? max_n : 0); ++p2)
          for (int q2 = 0; q2 <= (l ? max_n : 0); ++q2)
            for (int p3 = 0; p3 <= (a ? max_n : 0); ++p3)
              for (int q3 = 0; q3 <= (a ? max_n : 0); ++q3) {
                DegreeProfile d{p1, q1, p2, q2, p3, q3, r, l, a};
                if (d.N() <= max_n) out.push_back(d);
              }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.N() < b.N(); });
  return out;
}

// ---------------------------------------------------------------- ζ and f

Expr build_zeta(const Structure& s) {
  s.validate();
  std::vector<Expr> terms;
  if (!s.p1.is_zero()) terms.push_back(Expr::div(s.p1.to_expr(), s.q1.to_expr()));
  if (s.log_present) terms.push_back(s.alpha * Expr::ln(Expr::div(s.p2.to_expr(), s.q2.to_expr())));
  if (s.arctan_present) terms.push_back(s.beta * Expr::arctan(Expr::div(s.p3.to_expr(), s.q3.to_expr())));
  return normalize(Expr::add(std::move(terms)));
}

InducedParts induced_parts(const Structure& s) {
  s.validate();
  const RatFunc one(Poly(Rational(1)));
  RatFunc P1 = s.p1.rational(), Q1 = s.q1.rational();
  RatFunc P2 = s.log_present ? s.p2.rational() : one;
  RatFunc Q2 = s.log_present ? s.q2.rational() : one;
  RatFunc P3 = s.p3.rational(), Q3 = s.q3.rational();
  RatFunc D3 = s.arctan_present ? P3 * P3 + Q3 * Q3 : one;
  RatFunc A = rational_form(s.alpha), B = rational_form(s.beta);

  auto part = [&](Var v) {
    auto d = [v](const RatFunc& r) { return derivative(r, v); };
    RatFunc t;
    if (!P1.is_zero()) t = t + (d(P1) * Q1 - P1 * d(Q1)) * P2 * Q2 * D3;
    if (s.log_present) t = t + A * Q1 * Q1 * (d(P2) * Q2 - P2 * d(Q2)) * D3;
    if (s.arctan_present) t = t + B * Q1 * Q1 * P2 * Q2 * (d(P3) * Q3 - P3 * d(Q3));
    return t;
  };
  return {part(Var::X), part(Var::Y)};
}

RatY build_f(const Structure& s) {
  InducedParts p = induced_parts(s);
  if (p.ny.is_zero()) throw Error(ErrorCode::DegenerateStructure, "zeta does not depend on y");
  return normalized_ratio(-p.nx / p.ny);
}

RatY f_from_zeta(const Expr& zeta) {
  const RatFunc& r = rational_form(zeta);
  RatFunc zy = derivative(r, Var::Y);
  if (zy.is_zero()) throw Error(ErrorCode::DegenerateStructure, "zeta does not depend on y");
  return normalized_ratio(-derivative(r, Var::X) / zy);
}

DegreeBounds degree_bounds(const DegreeProfile& d) {
  const int N = d.N();
  DegreeBounds b;
  b.n_P_max = std::max({N + d.n_q1 + d.n_q3 - d.n_p1 - d.n_p3, N + d.n_q1 - d.n_q3 - d.n_p1 + d.n_p3,
                        N + d.n_q3 - d.n_p3, N - d.n_q3 + d.n_p3, N + d.n_q1 - d.n_p1});
  b.n_Q_max = b.n_P_max - 1;
  b.total_params = N + 2 * (1 + (d.log ? 1 : 0) + (d.arctan ? 1 : 0));
  b.free_params = N + 1;
  return b;
}

// ---------------------------------------------------------------- random instances

const std::vector<double>& instance_sample_points() {
  static const std::vector<double> xs{-0.75, 0.0, 0.5, 1.25};
  return xs;
}

Substitution Instance::substitution() const {
  Substitution s;
  for (const auto& [n, v] : values) s.set(n, v);
  return s;
}

namespace {

bool nonzero_at_samples(const Expr& e) {
  for (double x : instance_sample_points()) {
    try {
      if (std::fabs(eval_numeric(e, x)) < 1e-9) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

}  // namespace

Instance random_instance(const Structure& s, std::uint64_t seed, int d, int max_tries) {
  if (d < 0) throw Error(ErrorCode::InvalidArgument, "coefficient degree must be nonnegative");
  const std::vector<std::string> names = s.unknowns();

  // leading y-coefficient of the generic induced denominator
  Expr lead_ny;
  {
    InducedParts parts = induced_parts(s);
    if (parts.ny.is_zero()) throw Error(ErrorCode::DegenerateStructure, "zeta does not depend on y");
    const Poly& n = parts.ny.num;
    lead_ny = to_expr(RatFunc(n.coefficients_in(Atom::y()).back()));
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    Instance inst;
    for (const auto& n : names) {
      std::vector<Expr> terms;
      for (int k = 0; k <= d; ++k) terms.push_back(Expr(coef(rng)) * Expr::pow(Expr::x(), k));
      inst.values[n] = normalize(Expr::add(std::move(terms)));
    }
    Substitution sub = inst.substitution();
    inst.structure = s.substituted(sub);
    const Structure& c = inst.structure;
    bool ok = true;
    for_each_poly(s, [&](const PolyY& generic) {
      if (!ok || generic.is_zero()) return;
      int k = generic.stored_degree();
      ok = nonzero_at_samples(substitute(generic.coeff(k), sub));
    });
    if (!ok) continue;
    if (!nonzero_at_samples(substitute(lead_ny, sub))) continue;
    try {
      c.validate();
      build_f(c);
    } catch (const Error&) {
      continue;
    }
    return inst;
  }
  throw Error(ErrorCode::ExhaustedRetries, "no admissible random instance after " + std::to_string(max_tries) + " tries");
}

}  // namespace ratode
