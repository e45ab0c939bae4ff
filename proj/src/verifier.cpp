#include "ratode/verifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ratode/algebra.hpp"
#include "ratode/error.hpp"

namespace ratode {

Expr pde_residual(const Expr& zeta, const RatY& f) {
  return equation_normal_form(diff(zeta) + f.to_expr() * diff_y(zeta));
}

std::pair<double, double> pde_residual_numeric(const Expr& zeta, const RatY& f,
                                               const std::vector<std::pair<double, double>>& points,
                                               const Bindings& b) {
  Expr zx = diff(zeta), zy = diff_y(zeta), fe = f.to_expr();
  double worst = 0, where = points.empty() ? 0 : points.front().first;
  for (const auto& [x, y] : points) {
    try {
      double r = std::abs(eval_numeric(zx, x, y, b) + eval_numeric(fe, x, y, b) * eval_numeric(zy, x, y, b));
      if (r > worst) {
        worst = r;
        where = x;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonFiniteResult) throw;
    }
  }
  return {worst, where};
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["symbolic_residual"] = symbolic_residual ? to_string(*symbolic_residual) : "skipped";
  j["numeric_max_drift"] = numeric_max_drift;
  nlohmann::json t;
  t["x0"] = trajectory.x0;
  t["y0"] = trajectory.y0;
  t["requested_span"] = trajectory.requested_span;
  t["span"] = trajectory.span;
  t["steps"] = trajectory.steps;
  t["rejected_steps"] = trajectory.rejected_steps;
  t["checkpoints"] = trajectory.checkpoints;
  t["pole_windows"] = nlohmann::json::array();
  for (const auto& [a, c] : trajectory.pole_windows) t["pole_windows"].push_back({a, c});
  j["trajectory"] = t;
  return j;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kC{0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1, 1};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr std::array<double, 7> kB5{35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0};
constexpr std::array<double, 7> kB4{5179.0 / 57600, 0,           7571.0 / 16695, 393.0 / 640,
                                    -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

class Flow {
 public:
  Flow(const RatY& f, const Bindings& b) : num_(f.num.to_expr()), den_(f.den.to_expr()), b_(b) {}

  double den(double x, double y) const { return eval_numeric(den_, x, y, b_); }
  double num(double x, double y) const { return eval_numeric(num_, x, y, b_); }

 private:
  Expr num_, den_;
  const Bindings& b_;
};

struct Step {
  double y;
  double err;
  bool crosses = false;  // some stage saw den(f) with the wrong sign
};

Step dp45(const Flow& fl, double x, double y, double h, bool den_positive) {
  std::array<double, 7> k{};
  Step out{};
  for (int i = 0; i < 7; ++i) {
    double yi = y;
    for (int j = 0; j < i; ++j) yi += h * kA[i][j] * k[j];
    double d = fl.den(x + kC[i] * h, yi);
    if (d == 0 || (d > 0) != den_positive) out.crosses = true;
    k[i] = fl.num(x + kC[i] * h, yi) / d;
    if (!std::isfinite(k[i])) throw Error(ErrorCode::NonFiniteResult, "slope not finite");
  }
  double y5 = y, y4 = y;
  for (int i = 0; i < 7; ++i) {
    y5 += h * kB5[i] * k[i];
    y4 += h * kB4[i] * k[i];
  }
  out.y = y5;
  out.err = std::abs(y5 - y4);
  return out;
}

bool finite_eval(const std::function<double()>& f, double& out) {
  try {
    out = f();
    return std::isfinite(out);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NonFiniteResult || e.code() == ErrorCode::DivisionByZero) return false;
    throw;
  }
}

}  // namespace

VerificationReport trajectory_check(const Expr& zeta, const RatY& f, double x0, double y0,
                                    double span, double tol, const Bindings& b,
                                    const TrajectoryOptions& opt) {
  if (!(span > 0)) throw Error(ErrorCode::InvalidArgument, "span must be positive");
  if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  VerificationReport rep;
  if (opt.symbolic) rep.symbolic_residual = pde_residual(zeta, f);
  auto& meta = rep.trajectory;
  meta.x0 = x0;
  meta.y0 = y0;
  meta.requested_span = span;

  Flow fl(f, b);
  auto zeta_at = [&](double x, double y) { return eval_numeric(zeta, x, y, b); };
  double c0 = 0, d0 = 0;
  if (!finite_eval([&] { return zeta_at(x0, y0); }, c0) || !finite_eval([&] { return fl.den(x0, y0); }, d0) ||
      d0 == 0)
    throw PoleEncountered(x0, "starting point is singular");

  const double local = tol / 100;
  const double scale = std::max(1.0, std::abs(c0));
  double x = x0, y = y0, end = x0 + span;
  double h = span / opt.checkpoints / 4;
  double next_check = x0 + span / opt.checkpoints;
  int check_index = 1;
  double den_prev = d0;

  auto shrink_to = [&](double bad_x, double last_safe) {
    meta.pole_windows.emplace_back(last_safe, bad_x);
    if (last_safe - x0 < opt.min_span_fraction * span)
      throw PoleEncountered(last_safe, "pole near x = " + std::to_string(bad_x));
    end = std::min(end, x0 + (last_safe - x0) * (1 - opt.pole_margin));
  };
  std::vector<std::pair<double, double>> drifts;  // (x, relative drift) per checkpoint

  while (x < end - 1e-15 * std::max(1.0, std::abs(end))) {
    if (meta.steps + meta.rejected_steps > opt.max_steps)
      throw Error(ErrorCode::StepFailure, "step budget exhausted at x = " + std::to_string(x));
    double target = std::min(next_check, end);
    double hh = std::min(h, target - x);
    Step s{};
    bool ok = true;
    try {
      s = dp45(fl, x, y, hh, den_prev > 0);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonFiniteResult && e.code() != ErrorCode::DivisionByZero) throw;
      ok = false;
    }
    double bound = local * (1 + std::abs(y));
    // Large relative jumps are refused so that blow-ups are approached, not crossed.
    if (!ok || !std::isfinite(s.y) || s.err > bound || std::abs(s.y - y) > 0.25 * (1 + std::abs(y))) {
      ++meta.rejected_steps;
      double factor = ok && std::isfinite(s.err) && s.err > 0 ? 0.9 * std::pow(bound / s.err, 0.2) : 0.25;
      h = hh * std::clamp(factor, 0.1, 0.5);
      if (h < 1e-12 * std::max(1.0, std::abs(x))) {
        // Step collapse: treat as a singularity of the solution.
        shrink_to(x + hh, x);
        if (x >= end) break;
        h = (end - x) / 4;
        if (h <= 0) break;
        if (h < 1e-12 * std::max(1.0, std::abs(x)))
          throw Error(ErrorCode::StepFailure, "step size underflow at x = " + std::to_string(x));
      }
      continue;
    }
    double den_new = 0;
    if (s.crosses || !finite_eval([&] { return fl.den(x + hh, s.y); }, den_new) || den_new == 0 ||
        (den_new > 0) != (den_prev > 0)) {
      // Bisect the sign change of den(f) along the step.
      double lo = 0, hi = hh;
      for (int it = 0; it < 60 && hi - lo > 1e-14 * std::max(1.0, std::abs(x)); ++it) {
        double mid = 0.5 * (lo + hi);
        double dm = 0;
        bool good = false;
        try {
          Step m = dp45(fl, x, y, mid, den_prev > 0);
          good = !m.crosses && finite_eval([&] { return fl.den(x + mid, m.y); }, dm) && dm != 0 &&
                 (dm > 0) == (den_prev > 0);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NonFiniteResult && e.code() != ErrorCode::DivisionByZero) throw;
        }
        (good ? lo : hi) = mid;
      }
      shrink_to(x + hi, x + lo);
      h = std::max(hh / 4, 1e-9);
      continue;
    }
    x += hh;
    y = s.y;
    den_prev = den_new;
    ++meta.steps;
    double factor = s.err > 0 ? 0.9 * std::pow(bound / s.err, 0.2) : 5.0;
    h = std::max(hh, h) * std::clamp(factor, 0.2, 5.0);
    h = std::min(h, span / opt.checkpoints);

    if (x >= next_check - 1e-15 * std::max(1.0, std::abs(next_check)) || x >= end) {
      double c = 0;
      if (!finite_eval([&] { return zeta_at(x, y); }, c)) {
        shrink_to(x, x - hh);
        break;
      }
      drifts.emplace_back(x, std::abs(c - c0) / scale);
      ++check_index;
      next_check = x0 + span * check_index / opt.checkpoints;
    }
  }
  // checkpoints passed before a pole was found may lie inside the margin
  const double limit = end + 1e-12 * std::max(1.0, std::abs(end));
  for (const auto& [cx, d] : drifts)
    if (cx <= limit) {
      rep.numeric_max_drift = std::max(rep.numeric_max_drift, d);
      ++meta.checkpoints;
    }
  meta.span = std::min(x, end) - x0;
  return rep;
}

}  // namespace ratode

namespace ratode {

namespace {

bool rational_in_xy(const Expr& e) {
  const RatFunc& r = rational_form(e);
  for (const Poly* p : {&r.num, &r.den})
    for (const auto& a : p->atoms())
      if (a.kind() != AtomKind::X && a.kind() != AtomKind::Y) return false;
  return true;
}

const std::vector<std::pair<double, double>>& default_starts() {
  static const std::vector<std::pair<double, double>> s{
      {0.3, 0.5}, {0.5, 1.3}, {0.2, -0.4}, {0.7, 0.9}, {-0.3, 0.6}, {0.1, 2.0}, {1.2, -1.5}};
  return s;
}

}  // namespace

nlohmann::json SolutionCheck::to_json() const {
  nlohmann::json j = report.to_json();
  j["passed"] = passed;
  j["symbolic_zero"] = symbolic_zero;
  j["pde_numeric"] = pde_numeric;
  if (!reason.empty()) j["reason"] = reason;
  return j;
}

SolutionCheck check_solution(const Expr& zeta, const RatY& f, const Bindings& b,
                             const SolutionCheckOptions& opt) {
  SolutionCheck out;
  if (!depends_on_y(normalize(zeta))) {
    out.reason = "candidate does not depend on y";
    return out;
  }
  std::optional<Expr> sym;
  try {
    sym = pde_residual(zeta, f);
  } catch (const Error&) {
  }
  out.report.symbolic_residual = sym;
  out.symbolic_zero = sym && is_zero(*sym);
  if (sym && !out.symbolic_zero && rational_in_xy(*sym)) {
    out.reason = "symbolic residual is a nonzero rational function";
    return out;
  }
  if (!out.symbolic_zero) {
    std::vector<std::pair<double, double>> pts;
    for (double x : {0.21, 0.37, 0.55, 0.72, -0.33})
      for (double y : {-0.6, 0.3, 1.4}) pts.emplace_back(x, y);
    out.pde_numeric = pde_residual_numeric(zeta, f, pts, b).first;
    if (!(out.pde_numeric < opt.pde_limit)) {
      out.reason = "numeric residual " + std::to_string(out.pde_numeric);
      return out;
    }
  }
  const auto& starts = opt.starts.empty() ? default_starts() : opt.starts;
  TrajectoryOptions topt;
  topt.symbolic = false;
  std::string last;
  for (const auto& [x0, y0] : starts) {
    try {
      VerificationReport r = trajectory_check(zeta, f, x0, y0, opt.span, opt.tol, b, topt);
      r.symbolic_residual = sym;
      out.report = r;
      out.passed = r.numeric_max_drift < opt.drift_limit;
      if (!out.passed) out.reason = "drift " + std::to_string(r.numeric_max_drift);
      return out;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PoleEncountered && e.code() != ErrorCode::NonFiniteResult &&
          e.code() != ErrorCode::StepFailure && e.code() != ErrorCode::DivisionByZero)
        throw;
      last = e.what();
    }
  }
  out.reason = "no regular start point (" + last + ")";
  return out;
}

}  // namespace ratode
