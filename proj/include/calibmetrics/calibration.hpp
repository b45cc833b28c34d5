#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "calibmetrics/corpus.hpp"
#include "calibmetrics/metrics.hpp"
#include "calibmetrics/rational.hpp"

namespace calib {

enum class CalibrationMode { aggregate, fractional };

const char* calibration_mode_name(CalibrationMode mode);
CalibrationMode calibration_mode_from_name(const std::string& name);

// n is the averaged number of maximum interdependent team members: the team
// size below which no correction applies. There is no golden number for it;
// 10 follows the et-al convention for long author lists.
struct CalibrationConfig {
  std::int64_t n = 10;
  CalibrationMode mode = CalibrationMode::aggregate;
  // When set, a collaboration smaller than n raises NotApplicable instead of
  // clamping the factor to 1.
  bool strict_not_applicable = false;
};

struct CalibratedMeasure {
  MeasureValue raw;
  Rational factor;            // in (0, 1]
  Rational calibrated_value;  // raw.value * factor, exact
  CalibrationConfig config;
};

// The collaboration-size correction: n/N for N > n, identity for N <= n.
Rational calibration_factor(std::int64_t collaboration_size, std::int64_t n);

// Same, honoring config.strict_not_applicable for N < n.
Rational calibration_factor(std::int64_t collaboration_size, const CalibrationConfig& config);

// Applies the correction to a measure computed over papers sharing a single
// collaboration size N.
CalibratedMeasure calibrate_aggregate(const MeasureValue& measure,
                                      std::int64_t collaboration_size,
                                      const CalibrationConfig& config);

// Per-paper credit share: each paper weighted by its own collaboration size.
std::map<std::string, Rational> fractional_weights(std::span<const PaperRecord> papers,
                                                   const CalibrationConfig& config);

struct WeightedPaper {
  std::int64_t citation_count = 0;
  Rational weight;  // in (0, 1]
};

// Largest real h such that the total weight of papers with at least h
// citations is >= h. Equals the integer h-index when all weights are 1.
Rational calibrated_h_index(std::span<const WeightedPaper> papers);

}  // namespace calib
