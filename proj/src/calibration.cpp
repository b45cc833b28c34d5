#include "calibmetrics/calibration.hpp"

#include <algorithm>

namespace calib {

const char* calibration_mode_name(CalibrationMode mode) {
  return mode == CalibrationMode::aggregate ? "aggregate" : "fractional";
}

CalibrationMode calibration_mode_from_name(const std::string& name) {
  if (name == "aggregate") return CalibrationMode::aggregate;
  if (name == "fractional") return CalibrationMode::fractional;
  throw Error("unknown calibration mode: " + name);
}

Rational calibration_factor(std::int64_t collaboration_size, std::int64_t n) {
  if (collaboration_size < 1) throw NonPositiveInput("collaboration size N");
  if (n < 1) throw NonPositiveInput("interdependent team size n");
  if (collaboration_size <= n) return Rational(1);
  // 1 - (N - n)/N reduces to n/N
  return Rational(n, collaboration_size);
}

Rational calibration_factor(std::int64_t collaboration_size, const CalibrationConfig& config) {
  if (config.strict_not_applicable && collaboration_size >= 1 &&
      collaboration_size < config.n) {
    throw NotApplicable(collaboration_size, config.n);
  }
  return calibration_factor(collaboration_size, config.n);
}

CalibratedMeasure calibrate_aggregate(const MeasureValue& measure,
                                      std::int64_t collaboration_size,
                                      const CalibrationConfig& config) {
  Rational factor = calibration_factor(collaboration_size, config);
  return CalibratedMeasure{measure, factor, measure.value * factor, config};
}

std::map<std::string, Rational> fractional_weights(std::span<const PaperRecord> papers,
                                                   const CalibrationConfig& config) {
  std::map<std::string, Rational> weights;
  for (const auto& p : papers) {
    weights[p.paper_id] = calibration_factor(p.collaboration_size, config);
  }
  return weights;
}

Rational calibrated_h_index(std::span<const WeightedPaper> papers) {
  std::vector<WeightedPaper> sorted(papers.begin(), papers.end());
  for (const auto& p : sorted) {
    if (p.weight <= Rational(0) || p.weight > Rational(1)) {
      throw InvalidWeight("weights must lie in (0, 1], got " + p.weight.to_fraction());
    }
    if (p.citation_count < 0) throw NonPositiveInput("citation count");
  }
  std::sort(sorted.begin(), sorted.end(), [](const WeightedPaper& a, const WeightedPaper& b) {
    return a.citation_count > b.citation_count;
  });

  // W(h) = total weight of papers with citation_count >= h is a nonincreasing
  // step function, constant between adjacent distinct counts. On the interval
  // ending at count c the best feasible h is min(c, W(c)), so the answer is
  // the maximum of that expression over distinct counts.
  Rational best(0);
  Rational cumulative(0);
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::int64_t count = sorted[i].citation_count;
    while (i < sorted.size() && sorted[i].citation_count == count) {
      cumulative += sorted[i].weight;
      ++i;
    }
    Rational candidate = std::min(Rational(count), cumulative);
    best = std::max(best, candidate);
  }
  return best;
}

}  // namespace calib
