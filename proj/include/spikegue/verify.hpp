#pragma once

#include <string>
#include <vector>

namespace spikegue {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  // Adds the kernel convergence ladder and the spectral rigidity survey.
  bool full = false;
  // Negative control: flips the sign of one identity factor so the
  // equivalence suite must report a failure.
  bool inject_fault = false;
  int workers = 1;
};

struct VerifyReport {
  bool full = false;
  std::vector<CheckResult> checks;
  // Rigidity survey of the full-mode run, serialized; empty in quick mode.
  std::string rigidity_json;

  bool all_passed() const;
};

// Property suites over the assembled pipeline: identity equivalence,
// interlacing, kernel reduction to the closed Airy form, semicircle
// quantile symmetry, density-estimate normalization, and full-truncation
// consistency; full mode adds the kernel convergence ladder and the
// rigidity survey. Every check runs even after a failure.
VerifyReport run_verification(const VerifyOptions& options);

std::string to_json(const VerifyReport& report);

}  // namespace spikegue
