#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "calibmetrics/corpus.hpp"
#include "calibmetrics/rational.hpp"
#include "calibmetrics/types.hpp"

namespace calib {

struct CitationDistribution {
  enum class Kind { constant, uniform, geometric };

  Kind kind = Kind::constant;
  std::int64_t value = 0;  // constant
  std::int64_t low = 0;    // uniform, inclusive
  std::int64_t high = 0;
  Rational p;              // geometric success probability in (0, 1]

  static CitationDistribution constant(std::int64_t value);
  static CitationDistribution uniform(std::int64_t low, std::int64_t high);
  static CitationDistribution geometric(Rational p);
};

// One publishing unit. A cohort with collaboration_size 1 models solo
// authors; larger sizes model a collaboration whose papers carry that N and
// list a sampled member subset as the roster.
struct CohortSpec {
  std::string label;
  int member_count = 1;
  std::int64_t collaboration_size = 1;
  Rational papers_per_year;  // cohort output rate, fractional rates allowed
  CitationDistribution citation_distribution;
  std::vector<std::string> subfield_codes;
  int join_year = 0;  // members publish only from this year on
};

struct ScenarioSpec {
  std::uint64_t seed = 0;
  YearRange years;
  std::vector<CohortSpec> cohorts;
};

// Realized paper counts per (cohort label, year); lets tests check
// conservation without re-deriving the draws.
using GenerationSummary = std::map<std::pair<std::string, int>, std::int64_t>;

// Deterministic function of the spec: the same seed produces a byte-identical
// serialized corpus. Integer rates realize exactly; fractional rates use
// Bernoulli rounding so the expected count equals the rate.
Corpus generate(const ScenarioSpec& spec, GenerationSummary* summary = nullptr);

// Parses the JSON scenario document (mirrors the struct fields; rates and
// probabilities may be given as strings for exact decimals). Throws
// InvalidSpec.
ScenarioSpec scenario_from_json_text(const std::string& text);

// Hand-constructed corpus of three careers over 2008-2012: a solo
// theoretician (papers 72 -> 94, h 53 -> 61), a theoretician in a
// 3000-member collaboration (papers 81 -> 353, citations 2116 -> 10140,
// h 25 -> 47), and an experimentalist joining that collaboration late
// (papers 2 -> 149, h 0 -> 32). Citation counts are constructed to realize
// exactly those endpoints.
Corpus three_scientists_fixture();

// Author ids used by three_scientists_fixture.
inline constexpr const char* kSoloTheorist = "theorist-a";
inline constexpr const char* kCollabTheorist = "theorist-b";
inline constexpr const char* kExperimentalist = "experimentalist-c";
inline constexpr const char* kCollabLabel = "cms";
inline constexpr int kFixtureWindowStart = 2008;
inline constexpr int kFixtureWindowEnd = 2012;

}  // namespace calib
