#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ratode/algebra.hpp"
#include "ratode/matcher.hpp"

namespace ratode {

/// One case of a triangularized system. `solved` holds rules name^(order) :=
/// rhs in the order they were found; algebraic solutions have order 0.
struct CaseBranch {
  std::vector<Rule> solved;
  std::vector<Expr> residual_equations;  // in unknowns, no linear pivot left
  std::vector<Expr> conditions;          // on ODE coefficients only
  std::vector<Expr> restrictions;        // asserted != 0

  Substitution substitution() const;
  nlohmann::json to_json() const;
};

struct TriangularizeResult {
  std::vector<CaseBranch> branches;
  bool truncated = false;  // max_branches reached (BranchLimitExceeded)
};

/// Linear-pivot elimination with case splitting on pivot coefficients.
/// Pivot ranking: lowest total degree in unknowns, then fewest unknowns, then
/// numeric before symbolic pivot coefficients, then variable order (later
/// letters first, higher index first), algebraic before differential pivots.
/// A first-order rule whose right side is free of unknowns is integrated
/// formally: u := int(R, x, 0) + param(c_u).
TriangularizeResult triangularize(const DiffSystem& sys, int max_branches = 16);

struct AnsatzSolution {
  std::map<std::string, Expr> assignments;
  std::vector<Expr> leftover;  // equations free of the ansatz constants

  Substitution substitution() const;
  nlohmann::json to_json() const;
};

struct AnsatzOptions {
  int max_nodes = 4000;     // search budget
  int max_solutions = 8;
  std::vector<Rational> pin_values{Rational(0), Rational(1), Rational(-1)};
};

struct AnsatzResult {
  std::vector<AnsatzSolution> solutions;
  bool exhausted = false;  // budget ran out (SearchExhausted)
  int nodes = 0;
};

/// Polynomial ansatz of degree <= d for every unknown; the coefficient
/// equations are solved exactly: linear equations with numeric pivots first,
/// then bounded search over pin values. Constants left free are set to 0, or,
/// if that violates an inequation, the first free constant to 1.
AnsatzResult ansatz_solve(const DiffSystem& sys, int d, const AnsatzOptions& opt = {});

}  // namespace ratode
