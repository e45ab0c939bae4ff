#include "ratode/ode.hpp"

#include <cctype>

#include "ratode/error.hpp"
#include "ratode/parse.hpp"

namespace ratode {

Substitution OdeSpec::coefficient_substitution() const {
  Substitution s;
  for (int k = 0; k <= 4; ++k) s.set("X" + std::to_string(k), X(k));
  for (int k = 0; k <= 2; ++k) s.set("Y" + std::to_string(k), Y(k));
  return s;
}

OdeSpec OdeSpec::generic(int n, int m) {
  std::vector<Expr> num, den;
  for (int k = 0; k <= n; ++k) num.push_back(Expr::fn("X" + std::to_string(k)));
  if (m == 0) {
    den.emplace_back(1);
  } else {
    for (int k = 0; k <= m; ++k) den.push_back(Expr::fn("Y" + std::to_string(k)));
  }
  return OdeSpec{RatY(PolyY(std::move(num)), PolyY(std::move(den)))};
}

OdeSpec OdeSpec::from_ratio(const RatY& f) { return OdeSpec{normalize_rat(f)}; }

std::string OdeSpec::to_string() const {
  return "dy/dx = (" + ratode::to_string(f.num.to_expr()) + ")/(" + ratode::to_string(f.den.to_expr()) + ")";
}

OdeSpec parse_ode(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (text.substr(pos, 2) == "dy") {
    std::size_t start = pos;
    pos += 2;
    skip();
    bool ok = pos < text.size() && text[pos] == '/';
    if (ok) {
      ++pos;
      skip();
      ok = text.substr(pos, 2) == "dx";
      pos += 2;
      skip();
      ok = ok && pos < text.size() && text[pos] == '=';
      ++pos;
    }
    if (!ok) throw Error(ErrorCode::ParseError, "at offset " + std::to_string(start) + ": expected 'dy/dx ='");
  }
  Expr rhs = parse_expr(text.substr(pos), pos);
  return OdeSpec{normalized_ratio(rational_form(rhs))};
}

}  // namespace ratode
