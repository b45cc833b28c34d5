#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "calibmetrics/calibration.hpp"
#include "calibmetrics/corpus.hpp"
#include "calibmetrics/metrics.hpp"
#include "calibmetrics/scale.hpp"

namespace calib {

enum class ScaleInput { raw, calibrated };

struct ReportOptions {
  bool calibrate = false;
  CalibrationConfig config;
  std::optional<std::string> scale_subfield;
  ScaleInput scale_on = ScaleInput::raw;
};

// One report line. Stock kinds (total_papers, total_citations, h_index and
// the citations-per-paper aggregates) accumulate everything up to the window
// end; papers_per_year and m_parameter are rates over the window itself.
struct ReportRow {
  std::string author_id;
  YearRange window;
  MeasureKind kind = MeasureKind::total_papers;
  Rational raw_value;
  std::optional<Rational> calibrated_value;
  std::optional<Rational> factor;  // the shared n/N factor; absent in fractional mode
  std::optional<int> scale_bin;
  std::vector<std::string> flags;
};

// One row per measure kind, ordered by measure name. Values outside the
// citations-per-paper preconditions (no papers at all) drop those two rows.
std::vector<ReportRow> index_report(const Corpus& corpus, const std::string& author_id,
                                    YearRange window, const ReportOptions& options);

// Per-year paper counts for an author id or a collaboration label (papers
// whose id starts with "<group>-"), zero-filled over the window.
std::vector<std::pair<int, std::int64_t>> annual_evolution(const Corpus& corpus,
                                                           const std::string& group,
                                                           YearRange window);

std::string render_report_csv(const std::vector<ReportRow>& rows);
std::string render_report_json(const std::vector<ReportRow>& rows);
std::string render_evolution_csv(const std::vector<std::pair<int, std::int64_t>>& rows);
std::string render_evolution_json(const std::vector<std::pair<int, std::int64_t>>& rows);

}  // namespace calib
