#include "ratode/eval.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "ratode/algebra.hpp"
#include "ratode/error.hpp"

namespace ratode {

namespace {

double checked(double v, const char* what, double x) {
  if (!std::isfinite(v))
    throw Error(ErrorCode::NonFiniteResult, std::string(what) + " is not finite at x = " + std::to_string(x));
  return v;
}

double walk(const Expr& e, double x, const Bindings& b);

// Integral values computed during the current top-level evaluation; shared
// subtrees are integrated once per abscissa.
thread_local int eval_depth = 0;
thread_local std::map<std::pair<const ExprNode*, double>, double> call_cache;

constexpr double kIntegralTol = 1e-9;

// ∫ from the anchor to x of the integrand.
double formal_integral(const Expr& e, double x, const Bindings& b) {
  const auto key = std::make_pair(&e.node(), x);
  if (auto hit = call_cache.find(key); hit != call_cache.end()) return hit->second;
  const Expr& g = e.args()[0];
  auto f = [&](double t) { return walk(g, t, b); };
  double err = 0;
  double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, e.node().approx, x, 12, 1e-13, &err);
  // An integrand singular between anchor and x leaves a large error estimate.
  if (!(err <= kIntegralTol * std::max(1.0, std::abs(v))))
    throw Error(ErrorCode::NonFiniteResult, "integral does not converge at x = " + std::to_string(x));
  return call_cache[key] = checked(v, "integral", x);
}

double walk(const Expr& e, double x, const Bindings& b) {
  const auto& a = e.args();
  switch (e.kind()) {
    case ExprKind::Const: return e.node().approx;
    case ExprKind::X: return x;
    case ExprKind::Y:
      if (!b.y) throw Error(ErrorCode::MissingBinding, "no value for y");
      return *b.y;
    case ExprKind::Fn: {
      auto it = b.functions.find(e.name());
      if (it == b.functions.end()) throw Error(ErrorCode::MissingBinding, "no binding for function '" + e.name() + "'");
      return checked(it->second(e.order(), x), "bound function", x);
    }
    case ExprKind::Param: {
      auto it = b.params.find(e.name());
      if (it == b.params.end()) throw Error(ErrorCode::MissingBinding, "no value for parameter '" + e.name() + "'");
      return it->second;
    }
    case ExprKind::Add: {
      double s = 0;
      for (const auto& t : a) s += walk(t, x, b);
      return s;
    }
    case ExprKind::Mul: {
      double p = 1;
      for (const auto& t : a) p *= walk(t, x, b);
      return p;
    }
    case ExprKind::Pow: {
      double v = walk(a[0], x, b);
      if (v == 0 && e.order() < 0) throw Error(ErrorCode::NonFiniteResult, "pole at x = " + std::to_string(x));
      return std::pow(v, e.order());
    }
    case ExprKind::Neg: return -walk(a[0], x, b);
    case ExprKind::Div: {
      double d = walk(a[1], x, b);
      if (d == 0) throw Error(ErrorCode::NonFiniteResult, "pole at x = " + std::to_string(x));
      return walk(a[0], x, b) / d;
    }
    case ExprKind::Ln: {
      double u = walk(a[0], x, b);
      if (u == 0) throw Error(ErrorCode::NonFiniteResult, "ln(0) at x = " + std::to_string(x));
      return std::log(std::fabs(u));
    }
    case ExprKind::Arctan: return std::atan(walk(a[0], x, b));
    case ExprKind::Exp: return checked(std::exp(walk(a[0], x, b)), "exp", x);
    case ExprKind::Int: return formal_integral(e, x, b);
  }
  return 0;
}

}  // namespace

double eval_numeric(const Expr& e, double x0, const Bindings& b) {
  // bound functions re-enter here; only the outermost call owns the cache
  if (eval_depth == 0) call_cache.clear();
  ++eval_depth;
  struct Leave {
    ~Leave() {
      if (--eval_depth == 0) call_cache.clear();
    }
  } leave;
  return checked(walk(e, x0, b), "expression", x0);
}

double eval_numeric(const Expr& e, double x0, double y0, const Bindings& b) {
  Bindings local = b;
  local.y = y0;
  return eval_numeric(e, x0, local);
}

FunctionBinding expr_binding(const Expr& e, const Bindings& context) {
  struct State {
    std::mutex m;
    std::vector<Expr> derivs;
    Bindings ctx;
  };
  auto st = std::make_shared<State>();
  st->derivs.push_back(e);
  st->ctx = context;
  return [st](int order, double x) {
    Expr d;
    {
      std::lock_guard<std::mutex> lock(st->m);
      while (static_cast<int>(st->derivs.size()) <= order) st->derivs.push_back(diff(st->derivs.back()));
      d = st->derivs[static_cast<std::size_t>(order)];
    }
    return eval_numeric(d, x, st->ctx);
  };
}

Bindings& Bindings::bind(std::string name, const Expr& e) {
  functions[std::move(name)] = expr_binding(e, *this);
  return *this;
}

}  // namespace ratode
