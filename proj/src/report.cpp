#include "calibmetrics/report.hpp"

#include <algorithm>

#include <json.hpp>

namespace calib {

namespace {

constexpr int kEarliestYear = 1900;

std::int64_t max_collaboration_size(std::span<const PaperRecord> papers) {
  std::int64_t n = 1;
  for (const auto& p : papers) n = std::max(n, p.collaboration_size);
  return n;
}

std::vector<WeightedPaper> weighted(std::span<const PaperRecord> papers,
                                    const CalibrationConfig& config) {
  std::vector<WeightedPaper> out;
  out.reserve(papers.size());
  for (const auto& p : papers) {
    out.push_back({p.citation_count, calibration_factor(p.collaboration_size, config)});
  }
  return out;
}

// Fractional-mode analog of measure_over_papers: every paper contributes its
// discounted share instead of a full unit. With a uniform collaboration size
// this agrees with the aggregate correction for every kind except h, which
// has its own weighted definition.
Rational fractional_measure_over(std::span<const PaperRecord> papers, MeasureKind kind,
                                 int years, const CalibrationConfig& config) {
  if (years < 1) throw ZeroYears();
  std::vector<WeightedPaper> wp = weighted(papers, config);
  Rational weight_sum(0);
  Rational credit_sum(0);  // sum of weight * citations
  for (const auto& p : wp) {
    weight_sum += p.weight;
    credit_sum += p.weight * Rational(p.citation_count);
  }
  switch (kind) {
    case MeasureKind::total_papers:
      return weight_sum;
    case MeasureKind::papers_per_year:
      return weight_sum / Rational(years);
    case MeasureKind::total_citations:
      return credit_sum;
    case MeasureKind::citations_per_paper_mean: {
      if (wp.empty()) throw NoPapersInWindow("<paper set>");
      return credit_sum / Rational(static_cast<std::int64_t>(wp.size()));
    }
    case MeasureKind::citations_per_paper_median: {
      if (wp.empty()) throw NoPapersInWindow("<paper set>");
      std::vector<Rational> discounted;
      discounted.reserve(wp.size());
      for (const auto& p : wp) discounted.push_back(p.weight * Rational(p.citation_count));
      std::sort(discounted.begin(), discounted.end());
      auto n = discounted.size();
      if (n % 2 == 1) return discounted[n / 2];
      return (discounted[n / 2 - 1] + discounted[n / 2]) / Rational(2);
    }
    case MeasureKind::h_index:
      return calibrated_h_index(wp);
    case MeasureKind::m_parameter:
      return calibrated_h_index(wp) / Rational(years);
  }
  throw Error("unhandled measure kind");
}

Rational calibrated_measure_over(std::span<const PaperRecord> papers, MeasureKind kind,
                                 int years, const CalibrationConfig& config) {
  if (config.mode == CalibrationMode::fractional) {
    return fractional_measure_over(papers, kind, years, config);
  }
  Rational raw = measure_over_papers(papers, kind, years);
  return raw * calibration_factor(max_collaboration_size(papers), config);
}

std::vector<PaperRecord> tagged(std::vector<PaperRecord> papers, const std::string& code) {
  std::erase_if(papers, [&](const PaperRecord& p) {
    return std::find(p.subfield_codes.begin(), p.subfield_codes.end(), code) ==
           p.subfield_codes.end();
  });
  return papers;
}

// Scale table over the same population rule as build_scale_table, but with
// the population values run through the calibration first.
ScaleTable build_calibrated_table(const Corpus& corpus, const std::string& code,
                                  MeasureKind kind, YearRange window,
                                  const CalibrationConfig& config) {
  ScaleTable table;
  table.subfield_code = code;
  table.kind = kind;
  table.as_of_year = corpus.as_of_year();
  bool first = true;
  for (const auto& author : corpus.authors()) {
    std::vector<PaperRecord> papers = tagged(papers_of(corpus, author.author_id, window), code);
    if (papers.empty()) continue;
    Rational value = calibrated_measure_over(papers, kind, window.length(), config);
    if (first || value < table.min_value) table.min_value = value;
    if (first || value > table.max_value) table.max_value = value;
    first = false;
    ++table.computed_over;
  }
  if (table.computed_over == 0) throw EmptySubfield(code);
  return table;
}

}  // namespace

std::vector<ReportRow> index_report(const Corpus& corpus, const std::string& author_id,
                                    YearRange window, const ReportOptions& options) {
  window.require_nonempty();
  if (corpus.find_author(author_id) == nullptr) throw UnknownAuthor(author_id);

  const YearRange stock_window{kEarliestYear, window.end};
  const YearRange prior_window{kEarliestYear, window.start - 1};
  const std::vector<PaperRecord> stock_papers = papers_of(corpus, author_id, stock_window);
  const std::vector<PaperRecord> prior_papers = papers_of(corpus, author_id, prior_window);
  const std::vector<PaperRecord> flow_papers = papers_of(corpus, author_id, window);
  const int years = window.length();

  auto papers_for = [&](MeasureKind kind) -> const std::vector<PaperRecord>& {
    return kind == MeasureKind::papers_per_year ? flow_papers : stock_papers;
  };

  auto raw_value = [&](MeasureKind kind) -> Rational {
    if (kind == MeasureKind::m_parameter) {
      std::vector<std::int64_t> prior_counts;
      std::vector<std::int64_t> stock_counts;
      for (const auto& p : prior_papers) prior_counts.push_back(p.citation_count);
      for (const auto& p : stock_papers) stock_counts.push_back(p.citation_count);
      return m_parameter(h_index(prior_counts), h_index(stock_counts), years);
    }
    return measure_over_papers(papers_for(kind), kind, years);
  };

  auto calibrated_value = [&](MeasureKind kind, const Rational& raw) -> Rational {
    if (options.config.mode == CalibrationMode::aggregate) {
      MeasureValue measure{kind, raw, window, author_id};
      auto n_source = max_collaboration_size(papers_for(kind));
      return calibrate_aggregate(measure, n_source, options.config).calibrated_value;
    }
    if (kind == MeasureKind::m_parameter) {
      Rational h_end = calibrated_h_index(weighted(stock_papers, options.config));
      Rational h_start = calibrated_h_index(weighted(prior_papers, options.config));
      return (h_end - h_start) / Rational(years);
    }
    return fractional_measure_over(papers_for(kind), kind, years, options.config);
  };

  auto scale_for = [&](MeasureKind kind, ReportRow& row) {
    const std::string& code = *options.scale_subfield;
    std::vector<PaperRecord> author_tagged = tagged(flow_papers, code);
    ScaleTable table;
    Rational value;
    if (options.scale_on == ScaleInput::calibrated && options.calibrate) {
      table = build_calibrated_table(corpus, code, kind, window, options.config);
      if (author_tagged.empty()) {
        row.flags.push_back("no_subfield_papers");
        return;
      }
      value = calibrated_measure_over(author_tagged, kind, years, options.config);
    } else {
      table = build_scale_table(corpus, code, kind, window);
      if (author_tagged.empty()) {
        row.flags.push_back("no_subfield_papers");
        return;
      }
      value = author_measure(corpus, author_id, kind, window, code);
    }
    ScaleBin bin = to_centennial(value, table);
    row.scale_bin = bin.bin;
    if (bin.degenerate) row.flags.push_back("degenerate");
    if (bin.clamped) row.flags.push_back("clamped");
  };

  std::vector<ReportRow> rows;
  for (MeasureKind kind : all_measure_kinds_lexicographic()) {
    ReportRow row;
    row.author_id = author_id;
    row.window = window;
    row.kind = kind;
    try {
      row.raw_value = raw_value(kind);
    } catch (const NoPapersInWindow&) {
      continue;  // citations-per-paper kinds are undefined without papers
    }
    if (options.calibrate) {
      row.calibrated_value = calibrated_value(kind, row.raw_value);
      if (options.config.mode == CalibrationMode::aggregate) {
        row.factor = calibration_factor(max_collaboration_size(papers_for(kind)),
                                        options.config);
      }
      row.flags.push_back(std::string("mode=") + calibration_mode_name(options.config.mode));
    }
    if (options.scale_subfield.has_value()) {
      try {
        scale_for(kind, row);
      } catch (const NoPapersInWindow&) {
        row.flags.push_back("no_subfield_papers");
      }
      row.flags.push_back(std::string("scale_on=") +
                          (options.scale_on == ScaleInput::raw ? "raw" : "calibrated"));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::pair<int, std::int64_t>> annual_evolution(const Corpus& corpus,
                                                           const std::string& group,
                                                           YearRange window) {
  std::vector<std::pair<int, std::int64_t>> rows;
  if (corpus.find_author(group) != nullptr) {
    if (window.empty()) return rows;
    for (const auto& [year, count] : papers_per_year(corpus, group, window)) {
      rows.emplace_back(year, count);
    }
    return rows;
  }
  const std::string prefix = group + "-";
  bool any = false;
  std::map<int, std::int64_t> counts;
  for (int y = window.start; y <= window.end; ++y) counts[y] = 0;
  for (const auto& p : corpus.papers()) {
    if (p.paper_id.rfind(prefix, 0) != 0) continue;
    any = true;
    if (window.contains(p.year)) ++counts[p.year];
  }
  if (!any) throw UnknownGroup(group);
  if (window.empty()) return rows;
  for (const auto& [year, count] : counts) rows.emplace_back(year, count);
  return rows;
}

std::string render_report_csv(const std::vector<ReportRow>& rows) {
  // identifiers are validated to [A-Za-z0-9_-] at load, so no cell needs quoting
  std::string out =
      "author_id,window_start,window_end,measure_kind,raw_value,calibrated_value,factor,"
      "scale_bin,flags\n";
  for (const auto& r : rows) {
    out += r.author_id;
    out += ',' + std::to_string(r.window.start);
    out += ',' + std::to_string(r.window.end);
    out += ',' + std::string(measure_kind_name(r.kind));
    out += ',' + r.raw_value.to_decimal(4);
    out += ',';
    if (r.calibrated_value) out += r.calibrated_value->to_decimal(4);
    out += ',';
    if (r.factor) out += r.factor->to_decimal(4);
    out += ',';
    if (r.scale_bin) out += std::to_string(*r.scale_bin);
    out += ',';
    for (std::size_t i = 0; i < r.flags.size(); ++i) {
      if (i > 0) out += ';';
      out += r.flags[i];
    }
    out += '\n';
  }
  return out;
}

std::string render_report_json(const std::vector<ReportRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["author_id"] = r.author_id;
    j["window"] = {{"start", r.window.start}, {"end", r.window.end}};
    j["measure_kind"] = measure_kind_name(r.kind);
    j["raw_value"] = r.raw_value.to_decimal(4);
    if (r.calibrated_value) j["calibrated_value"] = r.calibrated_value->to_decimal(4);
    if (r.factor) j["factor"] = r.factor->to_decimal(4);
    if (r.scale_bin) j["scale_bin"] = *r.scale_bin;
    j["flags"] = r.flags;
    arr.push_back(std::move(j));
  }
  return arr.dump() + "\n";
}

std::string render_evolution_csv(const std::vector<std::pair<int, std::int64_t>>& rows) {
  std::string out = "year,count\n";
  for (const auto& [year, count] : rows) {
    out += std::to_string(year) + ',' + std::to_string(count) + '\n';
  }
  return out;
}

std::string render_evolution_json(const std::vector<std::pair<int, std::int64_t>>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [year, count] : rows) {
    arr.push_back({{"year", year}, {"count", count}});
  }
  return arr.dump() + "\n";
}

}  // namespace calib
