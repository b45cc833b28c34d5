#include "calibmetrics/metrics.hpp"

#include <algorithm>
#include <array>

namespace calib {

namespace {

struct KindName {
  MeasureKind kind;
  const char* name;
};

// Kept sorted by name; this is also the report row order.
constexpr std::array<KindName, 7> kKindNames = {{
    {MeasureKind::citations_per_paper_mean, "citations_per_paper_mean"},
    {MeasureKind::citations_per_paper_median, "citations_per_paper_median"},
    {MeasureKind::h_index, "h_index"},
    {MeasureKind::m_parameter, "m_parameter"},
    {MeasureKind::papers_per_year, "papers_per_year"},
    {MeasureKind::total_citations, "total_citations"},
    {MeasureKind::total_papers, "total_papers"},
}};

Rational median_of_sorted(const std::vector<std::int64_t>& sorted) {
  auto n = sorted.size();
  if (n % 2 == 1) return Rational(sorted[n / 2]);
  return Rational(sorted[n / 2 - 1] + sorted[n / 2], 2);
}

}  // namespace

const char* measure_kind_name(MeasureKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

MeasureKind measure_kind_from_name(const std::string& name) {
  for (const auto& [kind, kind_name] : kKindNames) {
    if (name == kind_name) return kind;
  }
  throw Error("unknown measure kind: " + name);
}

std::vector<MeasureKind> all_measure_kinds_lexicographic() {
  std::vector<MeasureKind> kinds;
  kinds.reserve(kKindNames.size());
  for (const auto& [kind, name] : kKindNames) {
    (void)name;
    kinds.push_back(kind);
  }
  return kinds;
}

std::int64_t h_index(std::span<const std::int64_t> citation_counts) {
  std::vector<std::int64_t> sorted(citation_counts.begin(), citation_counts.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::int64_t h = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    auto rank = static_cast<std::int64_t>(i) + 1;
    if (sorted[i] >= rank) {
      h = rank;
    } else {
      break;
    }
  }
  return h;
}

std::map<int, std::int64_t> papers_per_year(const Corpus& corpus, const std::string& author_id,
                                            YearRange window) {
  window.require_nonempty();
  std::map<int, std::int64_t> counts;
  for (int y = window.start; y <= window.end; ++y) counts[y] = 0;
  for (const auto& p : papers_of(corpus, author_id, window)) ++counts[p.year];
  return counts;
}

Rational annual_average_increase(std::int64_t count_start, std::int64_t count_end, int years) {
  if (years < 1) throw ZeroYears();
  return Rational(count_end - count_start, years);
}

Rational citations_per_paper(const Corpus& corpus, const std::string& author_id,
                             YearRange window, Aggregation aggregation) {
  std::vector<std::int64_t> counts = citation_counts_of(corpus, author_id, window);
  if (counts.empty()) throw NoPapersInWindow(author_id);
  if (aggregation == Aggregation::mean) {
    std::int64_t sum = 0;
    for (auto c : counts) sum += c;
    return Rational(sum, static_cast<std::int64_t>(counts.size()));
  }
  std::sort(counts.begin(), counts.end());
  return median_of_sorted(counts);
}

Rational m_parameter(std::int64_t h_start, std::int64_t h_end, int years) {
  if (years < 1) throw ZeroYears();
  if (h_end < h_start) throw DecreasingH(h_start, h_end);
  return Rational(h_end - h_start, years);
}

const char* career_class_name(CareerClass c) {
  switch (c) {
    case CareerClass::below: return "below";
    case CareerClass::successful: return "successful";
    case CareerClass::outstanding: return "outstanding";
    case CareerClass::unique: return "unique";
  }
  return "?";
}

CareerClass classify_by_h(std::int64_t h, int years) {
  if (years < 1) throw ZeroYears();
  // 20 * (years/20), 40 * (years/20), 60 * (years/20)
  if (h >= 3LL * years) return CareerClass::unique;
  if (h >= 2LL * years) return CareerClass::outstanding;
  if (h >= years) return CareerClass::successful;
  return CareerClass::below;
}

std::int64_t total_citations(const Corpus& corpus, const std::string& author_id,
                             YearRange window) {
  std::int64_t sum = 0;
  for (const auto& p : papers_of(corpus, author_id, window)) sum += p.citation_count;
  return sum;
}

std::vector<std::int64_t> citation_counts_of(const Corpus& corpus, const std::string& author_id,
                                             YearRange window) {
  std::vector<std::int64_t> counts;
  for (const auto& p : papers_of(corpus, author_id, window)) counts.push_back(p.citation_count);
  return counts;
}

}  // namespace calib
