#pragma once

#include <string>
#include <vector>

#include "minfib/config.hpp"

namespace minfib {

inline constexpr const char* kToolName = "minfib";
inline constexpr const char* kToolVersion = "0.1.0";

/// One verification record. `max_residual` holds the extremal quantity the
/// check compares against its tolerance; for checks that certify a lower
/// bound (regularity, the off-fibre negative control) passing means the
/// value exceeds the tolerance instead of staying below it.
struct CheckRecord {
  std::string name;
  int points_used = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  Json details;  // optional extra payload (fitted values, error messages)
};

struct VerificationReport {
  std::string command;
  Json config_echo;
  std::vector<CheckRecord> checks;
  bool overall_pass = true;

  void add(CheckRecord record);
  Json to_json() const;
  /// Serialised form written to files and stdout; deterministic for a fixed
  /// config and seed.
  std::string to_string() const;
};

/// Structural validation against the documented report schema
/// (schemas/report.schema.json). Returns an empty string when valid,
/// otherwise a description of the first violation.
std::string validate_report_json(const Json& report);

}  // namespace minfib
