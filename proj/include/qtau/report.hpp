#pragma once

// The `verify` command's check suite: every check compares two
// independently computed numbers and records target / measured / tolerance
// so the CLI can emit a machine-readable report.

#include <string>
#include <vector>

#include "qtau/qkernel.hpp"

namespace qtau {

struct CheckResult {
  std::string check_name;
  double target;
  double measured;
  double tolerance;
  bool pass;
};

enum class VerifyLevel { fast, full };

// Runs the suite at each q in `qs` (plus a few q-independent checks).
// `fast` covers the identities and closed forms; `full` adds the expensive
// oracles (full moment sweeps, Fourier inversion, symbol bounds on a grid).
std::vector<CheckResult> run_verification(const std::vector<double>& qs,
                                          VerifyLevel level,
                                          const TruncationBudget& b);

}  // namespace qtau
