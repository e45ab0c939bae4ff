#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "ratode/expr.hpp"

namespace ratode {

/// Value of an unknown function or one of its derivatives: f(order, x).
using FunctionBinding = std::function<double(int order, double x)>;

struct Bindings {
  std::map<std::string, FunctionBinding> functions;
  std::map<std::string, double> params;
  std::optional<double> y;

  Bindings& bind(std::string name, FunctionBinding f) {
    functions[std::move(name)] = std::move(f);
    return *this;
  }
  /// Binds `name` to a closed-form expression in x; derivatives come from diff.
  Bindings& bind(std::string name, const Expr& e);
};

/// Binding backed by an expression in x (and previously bound names).
FunctionBinding expr_binding(const Expr& e, const Bindings& context = {});

/// Real evaluation at x = x0. ln is evaluated as log|u|; formal integrals by
/// adaptive Gauss-Kronrod quadrature. Throws MissingBinding or NonFiniteResult.
double eval_numeric(const Expr& e, double x0, const Bindings& b = {});

/// Same, with y bound to y0.
double eval_numeric(const Expr& e, double x0, double y0, const Bindings& b = {});

}  // namespace ratode
