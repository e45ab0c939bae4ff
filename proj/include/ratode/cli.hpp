#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "ratode/expr.hpp"
#include "ratode/matcher.hpp"

namespace ratode {

enum class Command { DeriveF, Match, Solve, Case, Verify, Sweep };

std::string command_name(Command c);
Command parse_command(const std::string& s);

inline constexpr const char* kSchemaVersion = "ratode/1";

struct JobConfig {
  Command command = Command::Solve;
  std::string ode;
  std::string structure;  // JSON text, path to a .json file, or a degree profile
  std::string case_name;  // for `case`
  std::string zeta;       // for `verify`
  std::optional<MatchMode> mode;  // unset: strict, then projective on failure
  int degree = 1;                 // ansatz degree / random instance degree
  std::optional<std::uint64_t> seed;
  double tol = 1e-8;
  double span = 0.5;
  std::optional<Rational> anchor;
  int max_n = 4;  // sweep bound on the total degree N
  std::string a2, a0, b0;  // particular solutions, as expressions in x
  std::string json_out;    // "-" for stdout

  /// Throws InvalidArgument when a required input is missing.
  void validate() const;
};

struct JobOutput {
  int exit_code = 0;  // 0 ok, 2 conditions failed or nothing verified, 1 error
  nlohmann::json report;
  std::string text;   // human-readable summary
};

/// Runs one command. Library errors are caught and reported with their code.
JobOutput run(const JobConfig& job);

}  // namespace ratode
