#include "calibmetrics/synth.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <json.hpp>

#include "calibmetrics/rng.hpp"

namespace calib {

namespace {

using nlohmann::json;

constexpr int kMinYear = 1900;
constexpr int kMaxYear = 2100;

std::string zero_pad(std::int64_t value, std::size_t width) {
  std::string s = std::to_string(value);
  if (s.size() < width) s.insert(s.begin(), width - s.size(), '0');
  return s;
}

void validate_spec(const ScenarioSpec& spec) {
  if (spec.years.empty()) throw InvalidSpec("years range is empty");
  if (spec.years.start < kMinYear || spec.years.end > kMaxYear) {
    throw InvalidSpec("years must lie in [1900, 2100]");
  }
  if (spec.cohorts.empty()) throw InvalidSpec("at least one cohort required");
  std::set<std::string> labels;
  for (const auto& c : spec.cohorts) {
    if (c.label.empty()) throw InvalidSpec("cohort label must be nonempty");
    for (char ch : c.label) {
      bool ok = (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') ||
                (ch >= '0' && ch <= '9') || ch == '_' || ch == '-';
      if (!ok) throw InvalidSpec("cohort label '" + c.label + "' must match [A-Za-z0-9_-]+");
    }
    if (!labels.insert(c.label).second) throw InvalidSpec("duplicate cohort label " + c.label);
    if (c.member_count < 1) throw InvalidSpec("member_count must be positive in " + c.label);
    if (c.collaboration_size < 1) {
      throw InvalidSpec("collaboration_size must be positive in " + c.label);
    }
    if (c.papers_per_year.is_negative()) {
      throw InvalidSpec("papers_per_year must be nonnegative in " + c.label);
    }
    if (c.join_year > spec.years.end || c.join_year < kMinYear) {
      throw InvalidSpec("join_year out of range in " + c.label);
    }
    if (c.subfield_codes.size() > 10) throw InvalidSpec("too many subfield codes in " + c.label);
    switch (c.citation_distribution.kind) {
      case CitationDistribution::Kind::constant:
        if (c.citation_distribution.value < 0) {
          throw InvalidSpec("constant citation count must be nonnegative in " + c.label);
        }
        break;
      case CitationDistribution::Kind::uniform:
        if (c.citation_distribution.low < 0 ||
            c.citation_distribution.low > c.citation_distribution.high) {
          throw InvalidSpec("uniform bounds must satisfy 0 <= low <= high in " + c.label);
        }
        break;
      case CitationDistribution::Kind::geometric:
        if (c.citation_distribution.p <= Rational(0) || c.citation_distribution.p > Rational(1)) {
          throw InvalidSpec("geometric p must lie in (0, 1] in " + c.label);
        }
        break;
    }
  }
}

std::vector<int> sample_roster(SplitMix64& rng, int member_count, std::int64_t roster_size) {
  std::vector<int> members(static_cast<std::size_t>(member_count));
  std::iota(members.begin(), members.end(), 0);
  if (roster_size >= member_count) return members;
  // partial Fisher-Yates, then sorted for a stable author order
  for (std::int64_t i = 0; i < roster_size; ++i) {
    auto j = i + static_cast<std::int64_t>(
                     rng.below(static_cast<std::uint64_t>(member_count - i)));
    std::swap(members[static_cast<std::size_t>(i)], members[static_cast<std::size_t>(j)]);
  }
  members.resize(static_cast<std::size_t>(roster_size));
  std::sort(members.begin(), members.end());
  return members;
}

std::int64_t draw_citations(SplitMix64& rng, const CitationDistribution& dist) {
  switch (dist.kind) {
    case CitationDistribution::Kind::constant:
      return dist.value;
    case CitationDistribution::Kind::uniform:
      return rng.uniform(dist.low, dist.high);
    case CitationDistribution::Kind::geometric:
      return rng.geometric(dist.p);
  }
  return 0;
}

Rational rate_from_json(const json& j, const std::string& context) {
  if (j.is_string()) return Rational::from_decimal(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_float()) return Rational::from_double(j.get<double>());
  throw InvalidSpec(context + " must be a number or decimal string");
}

void check_spec_keys(const json& j, const std::set<std::string>& allowed,
                     const std::string& context) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.contains(key)) throw InvalidSpec("unknown key '" + key + "' in " + context);
  }
  for (const auto& key : allowed) {
    if (!j.contains(key)) throw InvalidSpec("missing key '" + key + "' in " + context);
  }
}

CitationDistribution distribution_from_json(const json& j, const std::string& context) {
  if (!j.is_object()) throw InvalidSpec("citation_distribution must be an object in " + context);
  std::string kind = j.value("kind", "");
  if (kind == "constant") {
    check_spec_keys(j, {"kind", "value"}, context);
    return CitationDistribution::constant(j.at("value").get<std::int64_t>());
  }
  if (kind == "uniform") {
    check_spec_keys(j, {"kind", "low", "high"}, context);
    return CitationDistribution::uniform(j.at("low").get<std::int64_t>(),
                                         j.at("high").get<std::int64_t>());
  }
  if (kind == "geometric") {
    check_spec_keys(j, {"kind", "p"}, context);
    return CitationDistribution::geometric(rate_from_json(j.at("p"), context + ".p"));
  }
  throw InvalidSpec("citation_distribution.kind must be constant|uniform|geometric in " + context);
}

}  // namespace

CitationDistribution CitationDistribution::constant(std::int64_t value) {
  CitationDistribution d;
  d.kind = Kind::constant;
  d.value = value;
  return d;
}

CitationDistribution CitationDistribution::uniform(std::int64_t low, std::int64_t high) {
  CitationDistribution d;
  d.kind = Kind::uniform;
  d.low = low;
  d.high = high;
  return d;
}

CitationDistribution CitationDistribution::geometric(Rational p) {
  CitationDistribution d;
  d.kind = Kind::geometric;
  d.p = p;
  return d;
}

Corpus generate(const ScenarioSpec& spec, GenerationSummary* summary) {
  validate_spec(spec);
  SplitMix64 rng(spec.seed);

  std::vector<AuthorProfile> authors;
  std::vector<PaperRecord> papers;

  for (const auto& cohort : spec.cohorts) {
    std::size_t member_width =
        std::max<std::size_t>(3, std::to_string(cohort.member_count - 1).size());
    std::vector<std::string> member_ids;
    member_ids.reserve(static_cast<std::size_t>(cohort.member_count));
    for (int m = 0; m < cohort.member_count; ++m) {
      std::string id = cohort.label + "-m" + zero_pad(m, member_width);
      member_ids.push_back(id);
      authors.push_back({id, cohort.label + " member " + std::to_string(m), cohort.join_year});
    }

    std::int64_t whole_rate = cohort.papers_per_year.floor();
    Rational fractional = cohort.papers_per_year - Rational(whole_rate);

    int first_year = std::max(spec.years.start, cohort.join_year);
    for (int year = first_year; year <= spec.years.end; ++year) {
      std::int64_t count = whole_rate;
      if (!fractional.is_zero() && rng.bernoulli(fractional)) ++count;
      if (summary != nullptr) (*summary)[{cohort.label, year}] = count;

      std::int64_t roster_size =
          std::min<std::int64_t>(cohort.member_count, cohort.collaboration_size);
      for (std::int64_t k = 0; k < count; ++k) {
        PaperRecord p;
        p.paper_id = cohort.label + "-" + std::to_string(year) + "-p" + zero_pad(k, 5);
        p.title = cohort.label + " record " + std::to_string(year) + "/" + std::to_string(k);
        p.year = year;
        for (int m : sample_roster(rng, cohort.member_count, roster_size)) {
          p.author_ids.push_back(member_ids[static_cast<std::size_t>(m)]);
        }
        p.collaboration_size = cohort.collaboration_size;
        p.roster_complete =
            static_cast<std::int64_t>(p.author_ids.size()) == cohort.collaboration_size;
        p.citation_count = draw_citations(rng, cohort.citation_distribution);
        p.subfield_codes = cohort.subfield_codes;
        papers.push_back(std::move(p));
      }
    }
  }
  return Corpus::from_records(std::move(papers), std::move(authors), spec.years.end);
}

ScenarioSpec scenario_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidSpec(std::string("not valid JSON: ") + e.what());
  }
  try {
    check_spec_keys(j, {"seed", "years", "cohorts"}, "scenario");
    ScenarioSpec spec;
    spec.seed = j.at("seed").get<std::uint64_t>();
    check_spec_keys(j.at("years"), {"start", "end"}, "years");
    spec.years = {j.at("years").at("start").get<int>(), j.at("years").at("end").get<int>()};
    for (const auto& cj : j.at("cohorts")) {
      check_spec_keys(cj,
                      {"label", "member_count", "collaboration_size", "papers_per_year",
                       "citation_distribution", "subfield_codes", "join_year"},
                      "cohort");
      CohortSpec c;
      c.label = cj.at("label").get<std::string>();
      c.member_count = cj.at("member_count").get<int>();
      c.collaboration_size = cj.at("collaboration_size").get<std::int64_t>();
      c.papers_per_year = rate_from_json(cj.at("papers_per_year"), c.label + ".papers_per_year");
      c.citation_distribution = distribution_from_json(cj.at("citation_distribution"), c.label);
      c.subfield_codes = cj.at("subfield_codes").get<std::vector<std::string>>();
      c.join_year = cj.at("join_year").get<int>();
      spec.cohorts.push_back(std::move(c));
    }
    validate_spec(spec);
    return spec;
  } catch (const json::exception& e) {
    throw InvalidSpec(e.what());
  }
}

namespace {

// three_scientists_fixture helpers: emit `count` papers for one owner in one year,
// popping citation counts off a prepared schedule.
struct FixtureBuilder {
  std::vector<PaperRecord> papers;

  void add_run(const std::string& id_prefix, int year, int first_index, int count,
               const std::vector<std::string>& author_ids, std::int64_t collaboration_size,
               const std::vector<std::string>& subfields, std::vector<std::int64_t>& schedule,
               std::size_t& next_citation) {
    for (int k = 0; k < count; ++k) {
      PaperRecord p;
      p.paper_id = id_prefix + "-" + std::to_string(year) + "-p" + zero_pad(first_index + k, 3);
      p.title = id_prefix + " record " + std::to_string(year) + "/" +
                std::to_string(first_index + k);
      p.year = year;
      p.author_ids = author_ids;
      p.collaboration_size = collaboration_size;
      p.roster_complete = collaboration_size == static_cast<std::int64_t>(author_ids.size());
      p.citation_count = schedule.at(next_citation++);
      p.subfield_codes = subfields;
      papers.push_back(std::move(p));
    }
  }
};

std::vector<std::int64_t> repeat_schedule(
    std::initializer_list<std::pair<std::int64_t, int>> blocks) {
  std::vector<std::int64_t> out;
  for (const auto& [value, count] : blocks) {
    out.insert(out.end(), static_cast<std::size_t>(count), value);
  }
  return out;
}

}  // namespace

Corpus three_scientists_fixture() {
  const std::string solo = kSoloTheorist;
  const std::string collab = kCollabTheorist;
  const std::string exper = kExperimentalist;
  const std::vector<std::string> theory = {"12-38"};
  const std::vector<std::string> collab_fields = {"13-85", "25-75"};
  const std::vector<std::string> exper_fields = {"13-85"};

  FixtureBuilder b;

  // Theorist A: 72 papers through 2007 (h 53), 22 more in-window (h reaches
  // 61, i.e. 94 papers and an average increase of 22/5 = 4.4 per year).
  {
    std::vector<std::int64_t> priors = repeat_schedule({{61, 53}, {3, 19}});
    std::size_t at = 0;
    for (int year = 2000; year <= 2007; ++year) {
      b.add_run("a", year, 0, 9, {solo}, 1, theory, priors, at);
    }
    std::vector<std::int64_t> window = repeat_schedule({{61, 8}, {5, 14}});
    at = 0;
    const int counts[5] = {4, 4, 5, 4, 5};
    for (int i = 0; i < 5; ++i) {
      b.add_run("a", 2008 + i, 0, counts[i], {solo}, 1, theory, window, at);
    }
  }

  // Theorist B: 81 solo papers through 2007 (2116 citations, h 25), then 272
  // collaboration papers across 2008-2012 (totals reach 10140 and h 47, a
  // jump of 22 over the 5 years).
  {
    std::vector<std::int64_t> priors = repeat_schedule({{80, 25}, {5, 20}, {1, 16}, {0, 20}});
    std::size_t at = 0;
    for (int year = 1995; year <= 2006; ++year) {
      b.add_run("b", year, 0, 6, {collab}, 1, theory, priors, at);
    }
    b.add_run("b", 2007, 0, 9, {collab}, 1, theory, priors, at);

    // Collaboration output before the experimentalist joins: all of
    // 2008-2010 plus the first 20 papers of 2011.
    std::vector<std::int64_t> early = repeat_schedule({{80, 22}, {47, 16}, {46, 87}});
    at = 0;
    b.add_run(kCollabLabel, 2008, 0, 25, {collab}, 3000, collab_fields, early, at);
    b.add_run(kCollabLabel, 2009, 0, 35, {collab}, 3000, collab_fields, early, at);
    b.add_run(kCollabLabel, 2010, 0, 45, {collab}, 3000, collab_fields, early, at);
    b.add_run(kCollabLabel, 2011, 0, 20, {collab}, 3000, collab_fields, early, at);

    // Shared output from autumn 2011 on: the experimentalist co-signs the
    // last 37 papers of 2011 and all 110 of 2012 (his h is built entirely
    // here: 32 papers at 40 citations).
    std::vector<std::int64_t> shared = repeat_schedule({{40, 32}, {2, 115}});
    at = 0;
    b.add_run(kCollabLabel, 2011, 20, 37, {collab, exper}, 3000, collab_fields, shared, at);
    b.add_run(kCollabLabel, 2012, 0, 110, {collab, exper}, 3000, collab_fields, shared, at);
  }

  // Experimentalist C: two uncited solo papers long before joining, so the
  // in-window record runs 2 -> 149 with h exploding from 0 to 32.
  {
    std::vector<std::int64_t> zeros = {0, 0};
    std::size_t at = 0;
    b.add_run("c", 1998, 0, 1, {exper}, 1, exper_fields, zeros, at);
    b.add_run("c", 2005, 0, 1, {exper}, 1, exper_fields, zeros, at);
  }

  std::vector<AuthorProfile> authors = {
      {solo, "Theorist A", 2000},
      {collab, "Theorist B", 1995},
      {exper, "Experimentalist C", 1998},
  };
  return Corpus::from_records(std::move(b.papers), std::move(authors), kFixtureWindowEnd);
}

}  // namespace calib
