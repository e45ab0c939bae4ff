#include "ratode/expr.hpp"

#include <sstream>

#include "ratode/algebra.hpp"
#include "ratode/error.hpp"

namespace ratode {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::InvalidArgument, "empty number");
  auto dot = s.find('.');
  try {
    if (dot == std::string::npos) {
      Rational q(s);
      q.canonicalize();
      return q;
    }
    std::string ip = s.substr(0, dot);
    std::string fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (neg || (!ip.empty() && ip[0] == '+')) ip = ip.substr(1);
    if (ip.empty()) ip = "0";
    if (fp.empty()) fp = "0";
    for (char c : ip + fp)
      if (c < '0' || c > '9') throw Error(ErrorCode::InvalidArgument, "bad number '" + s + "'");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    Rational q(Integer(ip) * scale + Integer(fp), scale);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::InvalidArgument, "bad number '" + s + "'");
  }
}

namespace {

std::shared_ptr<ExprNode> new_node(ExprKind k) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  return n;
}

}  // namespace

Expr Expr::make(ExprKind kind, std::vector<Expr> args, Rational value, std::string name,
                int order) {
  auto n = new_node(kind);
  n->args = std::move(args);
  n->value = std::move(value);
  n->approx = to_double(n->value);
  n->name = std::move(name);
  n->order = order;
  return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
}

Expr Expr::with_cache(std::shared_ptr<ExprNode> node, std::shared_ptr<const RatFunc> rf) {
  node->cache = std::move(rf);
  return Expr(std::shared_ptr<const ExprNode>(std::move(node)));
}

Expr::Expr() : Expr(Rational(0)) {}
Expr::Expr(int v) : Expr(Rational(v)) {}
Expr::Expr(long v) : Expr(Rational(v)) {}
Expr::Expr(long long v) : Expr(Rational(Integer(std::to_string(v)))) {}
Expr::Expr(const Rational& v) {
  auto n = new_node(ExprKind::Const);
  n->value = v;
  n->value.canonicalize();
  n->approx = to_double(n->value);
  node_ = std::move(n);
}

Expr Expr::x() { return make(ExprKind::X, {}); }
Expr Expr::y() { return make(ExprKind::Y, {}); }

Expr Expr::fn(std::string name, int order) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "negative derivative order");
  return make(ExprKind::Fn, {}, Rational(0), std::move(name), order);
}

Expr Expr::param(std::string name) {
  return make(ExprKind::Param, {}, Rational(0), std::move(name));
}

Expr Expr::ln(Expr arg) { return make(ExprKind::Ln, {std::move(arg)}); }
Expr Expr::arctan(Expr arg) { return make(ExprKind::Arctan, {std::move(arg)}); }
Expr Expr::exp(Expr arg) { return make(ExprKind::Exp, {std::move(arg)}); }

Expr Expr::integral(Expr integrand, Rational anchor) {
  return make(ExprKind::Int, {std::move(integrand)}, std::move(anchor));
}

Expr Expr::pow(Expr base, int exponent) {
  if (exponent == 1) return base;
  if (exponent < 0 && base.is_zero_literal())
    throw Error(ErrorCode::DivisionByZero, "negative power of zero");
  return make(ExprKind::Pow, {std::move(base)}, Rational(0), {}, exponent);
}

Expr Expr::div(Expr num, Expr den) {
  if (den.is_zero_literal()) throw Error(ErrorCode::DivisionByZero, "division by the zero constant");
  return make(ExprKind::Div, {std::move(num), std::move(den)});
}

Expr Expr::add(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  for (auto& t : terms) {
    if (t.kind() == ExprKind::Add)
      flat.insert(flat.end(), t.args().begin(), t.args().end());
    else
      flat.push_back(std::move(t));
  }
  if (flat.empty()) return Expr(0);
  if (flat.size() == 1) return flat.front();
  return make(ExprKind::Add, std::move(flat));
}

Expr Expr::mul(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  for (auto& f : factors) {
    if (f.kind() == ExprKind::Mul)
      flat.insert(flat.end(), f.args().begin(), f.args().end());
    else
      flat.push_back(std::move(f));
  }
  if (flat.empty()) return Expr(1);
  if (flat.size() == 1) return flat.front();
  return make(ExprKind::Mul, std::move(flat));
}

Expr Expr::neg(Expr e) { return make(ExprKind::Neg, {std::move(e)}); }

Expr operator+(const Expr& a, const Expr& b) { return Expr::add({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::add({a, Expr::neg(b)}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::mul({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::div(a, b); }
Expr operator-(const Expr& a) { return Expr::neg(a); }

int compare(const Expr& a, const Expr& b) {
  if (&a.node() == &b.node()) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (int c = cmp(a.value(), b.value()); c != 0) return c < 0 ? -1 : 1;
  if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
  if (a.order() != b.order()) return a.order() < b.order() ? -1 : 1;
  const auto& aa = a.args();
  const auto& ba = b.args();
  if (aa.size() != ba.size()) return aa.size() < ba.size() ? -1 : 1;
  for (std::size_t i = 0; i < aa.size(); ++i)
    if (int c = compare(aa[i], ba[i]); c != 0) return c;
  return 0;
}

namespace {

class Printer {
 public:
  explicit Printer(bool human) : human_(human) {}

  std::string print(const Expr& e, int min_prec = 0) {
    std::string s = raw(e);
    return precedence(e) < min_prec ? "(" + s + ")" : s;
  }

 private:
  bool human_;
  std::string x_name_ = "x";

  static int precedence(const Expr& e) {
    switch (e.kind()) {
      case ExprKind::Add: return 1;
      case ExprKind::Mul:
      case ExprKind::Div:
      case ExprKind::Neg: return 2;
      case ExprKind::Pow: return 4;
      case ExprKind::Const:
        if (sgn(e.value()) < 0 || e.value().get_den() != 1) return 2;
        return 5;
      default: return 5;
    }
  }

  static bool negative_term(const Expr& t) {
    if (t.kind() == ExprKind::Neg) return true;
    if (t.kind() == ExprKind::Const) return sgn(t.value()) < 0;
    if (t.kind() == ExprKind::Mul && !t.args().empty() && t.args()[0].is_const())
      return sgn(t.args()[0].value()) < 0;
    return false;
  }

  static Expr negated(const Expr& t) {
    if (t.kind() == ExprKind::Neg) return t.args()[0];
    if (t.kind() == ExprKind::Const) return Expr(Rational(-t.value()));
    std::vector<Expr> f = t.args();
    Rational c = -f[0].value();
    if (c == 1) {
      f.erase(f.begin());
      return Expr::mul(std::move(f));
    }
    f[0] = Expr(c);
    return Expr::make(ExprKind::Mul, std::move(f));
  }

  std::string raw(const Expr& e) {
    switch (e.kind()) {
      case ExprKind::Const: return to_string(e.value());
      case ExprKind::X: return x_name_;
      case ExprKind::Y: return "y";
      case ExprKind::Fn:
        if (e.order() == 0) return e.name();
        if (human_) return e.name() + std::string(static_cast<std::size_t>(e.order()), '\'');
        return "diff(" + e.name() + ",x," + std::to_string(e.order()) + ")";
      case ExprKind::Param: return human_ ? e.name() : "param(" + e.name() + ")";
      case ExprKind::Add: {
        std::string s;
        for (std::size_t i = 0; i < e.args().size(); ++i) {
          const Expr& t = e.args()[i];
          if (i == 0) {
            s += print(t, 1);
          } else if (negative_term(t)) {
            s += " - " + print(negated(t), 2);
          } else {
            s += " + " + print(t, 2);
          }
        }
        return s;
      }
      case ExprKind::Mul: {
        std::string s;
        for (std::size_t i = 0; i < e.args().size(); ++i) {
          if (i) s += "*";
          s += print(e.args()[i], i == 0 ? 2 : 3);
        }
        return s;
      }
      case ExprKind::Div: return print(e.args()[0], 2) + "/" + print(e.args()[1], 3);
      case ExprKind::Neg: return "-" + print(e.args()[0], 3);
      case ExprKind::Pow: {
        std::string ex = e.order() < 0 ? "(" + std::to_string(e.order()) + ")" : std::to_string(e.order());
        return print(e.args()[0], 5) + "^" + ex;
      }
      case ExprKind::Ln: return "ln(" + print(e.args()[0]) + ")";
      case ExprKind::Arctan: return "arctan(" + print(e.args()[0]) + ")";
      case ExprKind::Exp: return "exp(" + print(e.args()[0]) + ")";
      case ExprKind::Int: {
        if (!human_) return "int(" + print(e.args()[0]) + ", x, " + to_string(e.value()) + ")";
        std::string saved = x_name_;
        x_name_ = "t";
        std::string body = print(e.args()[0], 2);
        x_name_ = saved;
        return "∫_{" + to_string(e.value()) + "}^{" + saved + "} " + body + " dt";
      }
    }
    return "?";
  }
};

}  // namespace

std::string to_string(const Expr& e) { return Printer(false).print(e); }
std::string to_display(const Expr& e) { return Printer(true).print(e); }

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << to_string(e); }

}  // namespace ratode
