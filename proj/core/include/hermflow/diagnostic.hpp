#pragma once

#include <string>
#include <vector>

#include "hermflow/resonance.hpp"

namespace hermflow {

enum class Verdict { Pass, Inconsistent, Vacuous, NotApplicable };

std::string to_string(Verdict v);

struct ContinuationOptions {
  double cell = 0.05;        // nodal grid cell; monotonicity slack is 2 cells
  double final_tolerance = 0.05;
};

struct ContinuationReport {
  Verdict verdict = Verdict::NotApplicable;
  std::string reason;
  double final_distance = 0;
};

/// Consistency flag between a resonance report and the Hausdorff distances
/// (one per tau, undefined entries as NaN) from the nodal set to the zero
/// set of the dominant Hermite field. PASS needs a resonant report,
/// distances non-increasing up to 2 cells and a final distance within
/// tolerance. A report with no non-vanishing coefficient is vacuous.
ContinuationReport unique_continuation_diagnostic(const ResonanceReport& report,
                                                  const std::vector<double>& distances,
                                                  const ContinuationOptions& opt = {});

Json to_json(const ContinuationReport& r);

}  // namespace hermflow
