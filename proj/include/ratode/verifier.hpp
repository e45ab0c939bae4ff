#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ratode/eval.hpp"
#include "ratode/polyy.hpp"

namespace ratode {

/// Numerator of zeta_x + f*zeta_y; exact zero certifies a first integral.
Expr pde_residual(const Expr& zeta, const RatY& f);

/// max |zeta_x + f*zeta_y| over the points, skipping points where either side
/// is not finite. Returns the value and the arg-max x.
std::pair<double, double> pde_residual_numeric(const Expr& zeta, const RatY& f,
                                               const std::vector<std::pair<double, double>>& points,
                                               const Bindings& b = {});

struct TrajectoryMeta {
  double x0 = 0, y0 = 0;
  double requested_span = 0;
  double span = 0;  // after shrinking at poles
  int steps = 0;
  int rejected_steps = 0;
  int checkpoints = 0;
  std::vector<std::pair<double, double>> pole_windows;
};

struct VerificationReport {
  std::optional<Expr> symbolic_residual;  // empty when not computed
  double numeric_max_drift = 0;
  TrajectoryMeta trajectory;

  nlohmann::json to_json() const;
};

struct TrajectoryOptions {
  int checkpoints = 50;
  double min_span_fraction = 1e-3;  // below this a pole aborts the check
  double pole_margin = 0.05;        // fraction of the usable span dropped before a pole
  int max_steps = 200000;
  bool symbolic = true;
};

/// Integrates dy/dx = f from (x0, y0) over [x0, x0 + span] with an embedded
/// Dormand-Prince 5(4) pair (local tolerance tol/100) and records
/// max |c(x) - c(x0)| / max(1, |c(x0)|) for c = zeta(x, y(x)) at the
/// checkpoints. Sign changes of den(f) are bisected and the span is cut short
/// before them, leaving a margin where the solution is still well resolved. Throws PoleEncountered when the usable span collapses and
/// StepFailure when the step size underflows.
VerificationReport trajectory_check(const Expr& zeta, const RatY& f, double x0, double y0,
                                    double span, double tol, const Bindings& b = {},
                                    const TrajectoryOptions& opt = {});

struct SolutionCheckOptions {
  double tol = 1e-8;           // integrator tolerance
  double span = 0.5;
  double drift_limit = 1e-6;
  double pde_limit = 1e-8;     // numeric |ζx + f ζy| when not symbolically zero
  std::vector<std::pair<double, double>> starts;  // empty: built-in list
};

struct SolutionCheck {
  bool passed = false;
  bool symbolic_zero = false;
  double pde_numeric = 0;
  VerificationReport report;
  std::string reason;  // why it failed, empty on success

  nlohmann::json to_json() const;
};

/// Full check of a candidate first integral: symbolic PDE residual, numeric
/// residual when the symbolic one does not cancel, and a trajectory drift
/// check from the first start point that is regular.
SolutionCheck check_solution(const Expr& zeta, const RatY& f, const Bindings& b = {},
                             const SolutionCheckOptions& opt = {});

}  // namespace ratode
