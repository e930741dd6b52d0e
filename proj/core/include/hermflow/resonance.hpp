#pragma once

#include <string>
#include <vector>

#include "hermflow/expansion.hpp"

namespace hermflow {

enum class ResonanceStatus { Resonant, NotResonant, NonDegenerate, Inconclusive };

std::string to_string(ResonanceStatus s);

struct ResonanceOptions {
  double tau_begin = 0;
  double tau_end = -1;         // < 0: end of trajectory
  double margin = 0.05;        // dominant set: slopes within this of the max
  double rate_tolerance = 0.05;  // relative
  double min_decades = 1.0;    // decay of the dominant envelope over the window
};

struct ResonanceReport {
  ResonanceStatus status = ResonanceStatus::Inconclusive;
  std::vector<std::size_t> dominant;
  int level = -1;               // shared level of the dominant set, -1 if mixed
  double fitted_rate = 0;       // max slope of log|c|
  double expected_rate = 0;     // level rate of `level`
  double rate_deviation = 0;    // |fitted - expected| / |expected|
  double subdominant_gap = 0;   // fitted_rate - best non-dominant slope (inf if none)
  double decades = 0;
  std::vector<double> slopes;   // per index, NaN for indices that vanish
  std::string note;
};

ResonanceReport detect_resonance(const CoefficientTrajectory& traj, const ResonanceOptions& opt = {});

Json to_json(const ResonanceReport& r);

}  // namespace hermflow
