#include "hermflow/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hermflow/error.hpp"

namespace hermflow {

std::string to_string(ResonanceStatus s) {
  switch (s) {
    case ResonanceStatus::Resonant: return "resonant";
    case ResonanceStatus::NotResonant: return "not-resonant";
    case ResonanceStatus::NonDegenerate: return "non-degenerate";
    case ResonanceStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

ResonanceReport detect_resonance(const CoefficientTrajectory& traj, const ResonanceOptions& opt) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double t_end = opt.tau_end < 0 ? traj.taus.back() : opt.tau_end;
  std::vector<std::size_t> rows;
  for (std::size_t t = 0; t < traj.size(); ++t)
    if (traj.taus[t] >= opt.tau_begin - 1e-12 && traj.taus[t] <= t_end + 1e-12) rows.push_back(t);
  if (rows.size() < 2) throw ValidationError("resonance window holds fewer than two samples");

  ResonanceReport rep;
  const std::size_t nb = traj.basis->size();
  rep.slopes.assign(nb, nan);
  std::vector<double> intercept(nb, nan);
  for (std::size_t i = 0; i < nb; ++i) {
    double st = 0, sy = 0, stt = 0, sty = 0;
    bool ok = true;
    for (std::size_t t : rows) {
      const double c = std::abs(traj.coeffs[t][i]);
      if (c == 0 || !std::isfinite(c)) {
        ok = false;
        break;
      }
      const double x = traj.taus[t], y = std::log(c);
      st += x, sy += y, stt += x * x, sty += x * y;
    }
    if (!ok) continue;
    const double k = static_cast<double>(rows.size());
    const double den = k * stt - st * st;
    rep.slopes[i] = (k * sty - st * sy) / den;
    intercept[i] = (sy - rep.slopes[i] * st) / k;
  }

  double best = -std::numeric_limits<double>::infinity();
  for (double s : rep.slopes)
    if (!std::isnan(s)) best = std::max(best, s);
  if (!std::isfinite(best)) {
    rep.note = "all coefficients vanish on the window";
    return rep;
  }
  rep.fitted_rate = best;
  double runner_up = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nb; ++i) {
    if (std::isnan(rep.slopes[i])) continue;
    if (rep.slopes[i] >= best - opt.margin)
      rep.dominant.push_back(i);
    else
      runner_up = std::max(runner_up, rep.slopes[i]);
  }
  rep.subdominant_gap = best - runner_up;

  int level = traj.basis->level_of(rep.dominant.front());
  for (std::size_t i : rep.dominant)
    if (traj.basis->level_of(i) != level) level = -1;
  rep.level = level;

  // Decades of decay of the dominant envelope across the window.
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  {
    auto envelope = [&](std::size_t t) {
      double m = 0;
      for (std::size_t i : rep.dominant) m = std::max(m, std::abs(traj.coeffs[t][i]));
      return m;
    };
    hi = envelope(rows.front());
    lo = envelope(rows.back());
  }
  rep.decades = std::log10(hi / lo);

  bool has_level0 = false;
  for (std::size_t i : rep.dominant) has_level0 |= traj.basis->level_of(i) == 0;
  const int m = traj.basis->params.m;
  if (level >= 0) {
    rep.expected_rate = to_double(level_rate(level, m));
    rep.rate_deviation = std::abs(rep.fitted_rate - rep.expected_rate) / std::abs(rep.expected_rate);
  }

  if (has_level0) {
    rep.status = ResonanceStatus::NonDegenerate;
    rep.note = "level-0 coefficient persists; the field does not vanish at the blow-up point";
  } else if (rep.decades < opt.min_decades) {
    rep.status = ResonanceStatus::Inconclusive;
    rep.note = "window covers less than the required decay";
  } else if (level >= 0 && rep.rate_deviation <= opt.rate_tolerance) {
    rep.status = ResonanceStatus::Resonant;
  } else {
    rep.status = ResonanceStatus::NotResonant;
    rep.note = level < 0 ? "dominant set spans several levels" : "dominant rate differs from the level rate";
  }
  return rep;
}

Json to_json(const ResonanceReport& r) {
  Json slopes = Json::array();
  for (double s : r.slopes) slopes.push_back(std::isnan(s) ? Json(nullptr) : Json(s));
  return Json{{"schema", "hermflow/1"},
              {"kind", "resonance_report"},
              {"status", to_string(r.status)},
              {"dominant", r.dominant},
              {"level", r.level},
              {"fitted_rate", r.fitted_rate},
              {"expected_rate", r.expected_rate},
              {"rate_deviation", r.rate_deviation},
              {"subdominant_gap", std::isfinite(r.subdominant_gap) ? Json(r.subdominant_gap) : Json(nullptr)},
              {"decades", r.decades},
              {"slopes", std::move(slopes)},
              {"note", r.note}};
}

}  // namespace hermflow
