#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "calibmetrics/corpus.hpp"
#include "calibmetrics/metrics.hpp"
#include "calibmetrics/rational.hpp"

namespace calib {

// Per-(subfield, measure) bounds computed over the corpus population. Built
// fresh from a corpus scan; tables are immutable values.
struct ScaleTable {
  std::string subfield_code;
  MeasureKind kind = MeasureKind::total_papers;
  Rational min_value;
  Rational max_value;
  std::int64_t computed_over = 0;  // contributing authors
  int as_of_year = 0;

  bool operator==(const ScaleTable&) const = default;
};

// Position on the 100-bin scale. `degenerate` marks a single-valued
// population (every value equals the maximum, bin 100); `clamped` marks a
// query value outside the table bounds, mapped to the nearest anchor.
struct ScaleBin {
  int bin = 1;  // in [1, 100]
  bool degenerate = false;
  bool clamped = false;
  ScaleTable table;
};

// Scalar value of `kind` over an already-filtered paper set. `years` is the
// window length used by the rate kinds; the m-parameter here is the
// window-accumulated h divided by the window length.
Rational measure_over_papers(std::span<const PaperRecord> papers, MeasureKind kind, int years);

// The author's `kind` value restricted to their papers inside the window
// that carry `subfield_code` (all papers when the code is empty).
Rational author_measure(const Corpus& corpus, const std::string& author_id, MeasureKind kind,
                        YearRange window, const std::string& subfield_code = "");

// Scans every author with at least one paper tagged `subfield_code` inside
// the window and records the min and max of their measure values.
ScaleTable build_scale_table(const Corpus& corpus, const std::string& subfield_code,
                             MeasureKind kind, YearRange window);

// bin = floor((value - min)/(max - min) * 100) + 1, clamped to [1, 100].
// min maps to 1 and max to 100 exactly; every value of a degenerate table
// maps to 100.
ScaleBin to_centennial(const Rational& value, const ScaleTable& table);

// The author's bin in every subfield appearing on their papers in the
// window, each under that subfield's own table.
std::map<std::string, ScaleBin> expertise_pattern(const Corpus& corpus,
                                                  const std::string& author_id,
                                                  MeasureKind kind, YearRange window);

// {subfield_code, measure_kind, min_value, max_value, computed_over,
// as_of_year} with rationals rendered as 4-decimal strings.
std::string scale_table_to_json(const ScaleTable& table);

}  // namespace calib
