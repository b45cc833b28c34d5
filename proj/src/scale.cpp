#include "calibmetrics/scale.hpp"

#include <algorithm>

#include <json.hpp>

namespace calib {

namespace {

std::vector<PaperRecord> tagged_window_papers(const Corpus& corpus, const std::string& author_id,
                                              YearRange window,
                                              const std::string& subfield_code) {
  std::vector<PaperRecord> papers = papers_of(corpus, author_id, window);
  if (subfield_code.empty()) return papers;
  std::erase_if(papers, [&](const PaperRecord& p) {
    return std::find(p.subfield_codes.begin(), p.subfield_codes.end(), subfield_code) ==
           p.subfield_codes.end();
  });
  return papers;
}

}  // namespace

Rational measure_over_papers(std::span<const PaperRecord> papers, MeasureKind kind, int years) {
  if (years < 1) throw ZeroYears();
  auto count = static_cast<std::int64_t>(papers.size());
  std::vector<std::int64_t> citations;
  citations.reserve(papers.size());
  for (const auto& p : papers) citations.push_back(p.citation_count);

  switch (kind) {
    case MeasureKind::total_papers:
      return Rational(count);
    case MeasureKind::papers_per_year:
      return Rational(count, years);
    case MeasureKind::total_citations: {
      std::int64_t sum = 0;
      for (auto c : citations) sum += c;
      return Rational(sum);
    }
    case MeasureKind::citations_per_paper_mean: {
      if (count == 0) throw NoPapersInWindow("<paper set>");
      std::int64_t sum = 0;
      for (auto c : citations) sum += c;
      return Rational(sum, count);
    }
    case MeasureKind::citations_per_paper_median: {
      if (count == 0) throw NoPapersInWindow("<paper set>");
      std::sort(citations.begin(), citations.end());
      auto n = citations.size();
      if (n % 2 == 1) return Rational(citations[n / 2]);
      return Rational(citations[n / 2 - 1] + citations[n / 2], 2);
    }
    case MeasureKind::h_index:
      return Rational(h_index(citations));
    case MeasureKind::m_parameter:
      // h accumulated over the window, from a zero start
      return Rational(h_index(citations), years);
  }
  throw Error("unhandled measure kind");
}

Rational author_measure(const Corpus& corpus, const std::string& author_id, MeasureKind kind,
                        YearRange window, const std::string& subfield_code) {
  window.require_nonempty();
  std::vector<PaperRecord> papers = tagged_window_papers(corpus, author_id, window, subfield_code);
  return measure_over_papers(papers, kind, window.length());
}

ScaleTable build_scale_table(const Corpus& corpus, const std::string& subfield_code,
                             MeasureKind kind, YearRange window) {
  window.require_nonempty();
  ScaleTable table;
  table.subfield_code = subfield_code;
  table.kind = kind;
  table.as_of_year = corpus.as_of_year();

  bool first = true;
  for (const auto& author : corpus.authors()) {
    std::vector<PaperRecord> papers =
        tagged_window_papers(corpus, author.author_id, window, subfield_code);
    if (papers.empty()) continue;
    Rational value = measure_over_papers(papers, kind, window.length());
    if (first || value < table.min_value) table.min_value = value;
    if (first || value > table.max_value) table.max_value = value;
    first = false;
    ++table.computed_over;
  }
  if (table.computed_over == 0) throw EmptySubfield(subfield_code);
  return table;
}

ScaleBin to_centennial(const Rational& value, const ScaleTable& table) {
  ScaleBin result;
  result.table = table;

  if (table.min_value == table.max_value) {
    // Single-valued population: every author's value is the maximum.
    result.bin = 100;
    result.degenerate = true;
    result.clamped = value != table.max_value;
    return result;
  }

  Rational clamped_value = value;
  if (clamped_value < table.min_value) {
    clamped_value = table.min_value;
    result.clamped = true;
  } else if (clamped_value > table.max_value) {
    clamped_value = table.max_value;
    result.clamped = true;
  }

  Rational position =
      (clamped_value - table.min_value) / (table.max_value - table.min_value) * Rational(100);
  auto bin = position.floor() + 1;
  result.bin = static_cast<int>(std::clamp<std::int64_t>(bin, 1, 100));
  return result;
}

std::map<std::string, ScaleBin> expertise_pattern(const Corpus& corpus,
                                                  const std::string& author_id,
                                                  MeasureKind kind, YearRange window) {
  if (corpus.find_author(author_id) == nullptr) throw UnknownAuthor(author_id);
  std::map<std::string, ScaleBin> pattern;
  for (const auto& p : papers_of(corpus, author_id, window)) {
    for (const auto& code : p.subfield_codes) {
      if (pattern.contains(code)) continue;
      ScaleTable table = build_scale_table(corpus, code, kind, window);
      Rational value = author_measure(corpus, author_id, kind, window, code);
      pattern.emplace(code, to_centennial(value, table));
    }
  }
  return pattern;
}

std::string scale_table_to_json(const ScaleTable& table) {
  nlohmann::ordered_json j;
  j["subfield_code"] = table.subfield_code;
  j["measure_kind"] = measure_kind_name(table.kind);
  j["min_value"] = table.min_value.to_decimal(4);
  j["max_value"] = table.max_value.to_decimal(4);
  j["computed_over"] = table.computed_over;
  j["as_of_year"] = table.as_of_year;
  return j.dump();
}

}  // namespace calib
