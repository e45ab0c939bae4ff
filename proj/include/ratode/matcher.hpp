#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ratode/ode.hpp"
#include "ratode/structure.hpp"

namespace ratode {

enum class MatchMode { Strict, Projective };

std::string mode_name(MatchMode m);
MatchMode parse_mode(const std::string& s);

/// Polynomial differential-algebraic system: equations (= 0) and
/// inequations (!= 0) in the structure's unknown functions.
struct DiffSystem {
  struct Tag {
    int power = 0;
    std::string side;  // "num", "den" or "cross"
  };

  MatchMode mode = MatchMode::Strict;
  std::vector<Expr> equations;
  std::vector<Expr> inequations;
  std::vector<std::string> unknowns;
  std::vector<std::string> coefficients;  // unknown functions of the ODE itself
  std::vector<Tag> provenance;            // one per equation

  nlohmann::json to_json() const;
};

/// Coefficient-wise equality of f_structure and f_ode in y. When both
/// denominators are free of y the common scale is absorbed by cross
/// multiplication; otherwise numerators and denominators are equated
/// separately. Zero-padded coefficients are kept. Throws DegreeMismatch when
/// the ODE's degrees exceed the structure's bounds.
DiffSystem match_strict(const Structure& s, const OdeSpec& ode);

/// Coefficients in y of num_s*den_ode - num_ode*den_s, plus den_s != 0.
DiffSystem match_projective(const Structure& s, const OdeSpec& ode);

DiffSystem match(const Structure& s, const OdeSpec& ode, MatchMode mode);

}  // namespace ratode
