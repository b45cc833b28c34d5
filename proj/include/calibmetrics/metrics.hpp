#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "calibmetrics/corpus.hpp"
#include "calibmetrics/rational.hpp"
#include "calibmetrics/types.hpp"

namespace calib {

enum class MeasureKind {
  papers_per_year,
  citations_per_paper_mean,
  citations_per_paper_median,
  total_citations,
  h_index,
  m_parameter,
  total_papers,
};

const char* measure_kind_name(MeasureKind kind);
MeasureKind measure_kind_from_name(const std::string& name);
// All kinds ordered by their names (the report row order).
std::vector<MeasureKind> all_measure_kinds_lexicographic();

// A named scalar measure with its evaluation window.
struct MeasureValue {
  MeasureKind kind;
  Rational value;
  YearRange window;
  std::string author_id;
};

// Largest h such that at least h of the counts are >= h.
std::int64_t h_index(std::span<const std::int64_t> citation_counts);

// Count of the author's papers per year, zero-filled over the window.
std::map<int, std::int64_t> papers_per_year(const Corpus& corpus, const std::string& author_id,
                                            YearRange window);

// (count_end - count_start) / years; negative when output declines.
Rational annual_average_increase(std::int64_t count_start, std::int64_t count_end, int years);

enum class Aggregation { mean, median };

// Mean or median citation count over the author's papers in the window.
// Median of an even-length list is the mean of the two central values.
Rational citations_per_paper(const Corpus& corpus, const std::string& author_id,
                             YearRange window, Aggregation aggregation);

// (h_end - h_start) / years. h never decreases as citations accumulate.
Rational m_parameter(std::int64_t h_start, std::int64_t h_end, int years);

enum class CareerClass { below, successful, outstanding, unique };

const char* career_class_name(CareerClass c);

// Hirsch's 20-year h = 20/40/60 characterization, thresholds scaled
// linearly to the given horizon: successful at h >= years, outstanding at
// 2*years, unique at 3*years.
CareerClass classify_by_h(std::int64_t h, int years);

std::int64_t total_citations(const Corpus& corpus, const std::string& author_id,
                             YearRange window);

// Convenience used throughout reporting: citation counts of the author's
// papers inside the window.
std::vector<std::int64_t> citation_counts_of(const Corpus& corpus, const std::string& author_id,
                                             YearRange window);

}  // namespace calib
