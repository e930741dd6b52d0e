#include "hermflow/diagnostic.hpp"

#include <cmath>

namespace hermflow {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Inconsistent: return "INCONSISTENT";
    case Verdict::Vacuous: return "VACUOUS";
    case Verdict::NotApplicable: return "NOT_APPLICABLE";
  }
  return "?";
}

ContinuationReport unique_continuation_diagnostic(const ResonanceReport& report, const std::vector<double>& distances,
                                                  const ContinuationOptions& opt) {
  ContinuationReport out;
  if (report.dominant.empty()) {
    out.verdict = Verdict::Vacuous;
    out.reason = "field vanishes identically";
    return out;
  }
  if (report.status != ResonanceStatus::Resonant) {
    out.verdict = Verdict::NotApplicable;
    out.reason = "trajectory is " + to_string(report.status);
    return out;
  }
  if (distances.empty() || std::isnan(distances.back())) {
    out.verdict = Verdict::Inconsistent;
    out.reason = "nodal distance undefined";
    out.final_distance = std::nan("");
    return out;
  }
  out.final_distance = distances.back();
  for (std::size_t i = 1; i < distances.size(); ++i) {
    if (std::isnan(distances[i]) || std::isnan(distances[i - 1])) continue;
    if (distances[i] > distances[i - 1] + 2 * opt.cell) {
      out.verdict = Verdict::Inconsistent;
      out.reason = "nodal distance grows while the coefficients are resonant";
      return out;
    }
  }
  if (out.final_distance > opt.final_tolerance) {
    out.verdict = Verdict::Inconsistent;
    out.reason = "nodal set stays away from the dominant Hermite zero set";
    return out;
  }
  out.verdict = Verdict::Pass;
  out.reason = "nodal set approaches the dominant Hermite zero set";
  return out;
}

Json to_json(const ContinuationReport& r) {
  return Json{{"schema", "hermflow/1"},
              {"kind", "continuation_verdict"},
              {"verdict", to_string(r.verdict)},
              {"reason", r.reason},
              {"final_distance", std::isnan(r.final_distance) ? Json(nullptr) : Json(r.final_distance)}};
}

}  // namespace hermflow
