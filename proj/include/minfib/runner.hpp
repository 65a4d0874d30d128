#pragma once

#include "minfib/report.hpp"

namespace minfib {

/// Runs the checks requested by the config and assembles the report in
/// declaration order. Runtime failures inside a check (unreachable fibre,
/// insufficient samples) become failed records, not exceptions.
VerificationReport run_verify(const RunConfig& config);

/// Least-squares eigenvalue estimation; the report places fitted and
/// predicted pairs side by side.
VerificationReport run_estimate(const RunConfig& config);

/// Samples the configured fibre and writes the CSV/JSON exports.
VerificationReport run_sample_fibre(const RunConfig& config);

/// Full command-line entry point (subcommands verify, sample-fibre,
/// estimate). Returns the process exit code: 0 all checks passed, 1 a check
/// failed, 2 usage or config errors.
int cli_main(int argc, const char* const* argv);

}  // namespace minfib
