#include <doctest.h>

#include <algorithm>
#include <random>

#include "calibmetrics/calibration.hpp"
#include "calibmetrics/metrics.hpp"

using namespace calib;

namespace {

// Independent check of the weighted h definition: the claimed value must be
// feasible (weights of papers at >= h sum to at least h) and h + delta must
// not be, for a tiny rational delta.
void check_weighted_h(const std::vector<WeightedPaper>& papers, const Rational& claimed) {
  auto weight_at_least = [&](const Rational& h) {
    Rational sum(0);
    for (const auto& p : papers) {
      if (Rational(p.citation_count) >= h) sum += p.weight;
    }
    return sum;
  };
  CHECK(weight_at_least(claimed) >= claimed);
  Rational just_above = claimed + Rational(1, 1000000);
  CHECK(weight_at_least(just_above) < just_above);
}

std::int64_t h_index_oracle(const std::vector<std::int64_t>& counts) {
  std::int64_t best = 0;
  for (std::int64_t h = 0; h <= static_cast<std::int64_t>(counts.size()); ++h) {
    std::int64_t at_least = 0;
    for (auto c : counts) {
      if (c >= h) ++at_least;
    }
    if (at_least >= h) best = h;
  }
  return best;
}

}  // namespace

TEST_CASE("calibration factor follows the correction formula") {
  CHECK(calibration_factor(10, 10) == Rational(1));
  CHECK(calibration_factor(3000, 10) == Rational(1, 300));
  CHECK(calibration_factor(1, 10) == Rational(1));  // clamped below n
  CHECK(calibration_factor(11, 10) == Rational(10, 11));
  CHECK_THROWS_AS(calibration_factor(0, 10), NonPositiveInput);
  CHECK_THROWS_AS(calibration_factor(10, 0), NonPositiveInput);
}

TEST_CASE("strict mode refuses N below n instead of clamping") {
  CalibrationConfig strict{10, CalibrationMode::aggregate, true};
  CHECK_THROWS_AS(calibration_factor(1, strict), NotApplicable);
  CHECK(calibration_factor(10, strict) == Rational(1));
  CHECK(calibration_factor(3000, strict) == Rational(1, 300));

  CalibrationConfig lenient{10, CalibrationMode::aggregate, false};
  CHECK(calibration_factor(1, lenient) == Rational(1));
}

TEST_CASE("aggregate calibration rescales the measure and keeps the raw value") {
  CalibrationConfig config;
  MeasureValue ppy{MeasureKind::papers_per_year, Rational(300), {2008, 2012}, "x"};
  CalibratedMeasure c = calibrate_aggregate(ppy, 3000, config);
  CHECK(c.calibrated_value == Rational(1));
  CHECK(c.factor == Rational(1, 300));
  CHECK(c.raw.value == Rational(300));

  MeasureValue h{MeasureKind::h_index, Rational(61), {2008, 2012}, "x"};
  CHECK(calibrate_aggregate(h, 1, config).calibrated_value == Rational(61));
  CHECK(calibrate_aggregate(h, 10, config).calibrated_value == Rational(61));
}

TEST_CASE("factor is nonincreasing in N and vanishes in the limit") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<std::int64_t> n_dist(1, 1000);
  for (int i = 0; i < 200; ++i) {
    std::int64_t n = n_dist(rng);
    Rational last(1);
    for (std::int64_t N : {n, n + 1, 2 * n, 10 * n, 1000 * n}) {
      Rational f = calibration_factor(N, n);
      CHECK(f > Rational(0));
      CHECK(f <= Rational(1));
      CHECK(f <= last);
      last = f;
    }
    // for any epsilon there is an N pushing the factor below it
    Rational epsilon(1, 1 << (i % 20));
    std::int64_t big = n * ((1 << (i % 20)) + 1);
    CHECK(calibration_factor(big, n) < epsilon);
  }
}

TEST_CASE("aggregate calibration commutes with positive scaling") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::int64_t> val(0, 100000);
  std::uniform_int_distribution<std::int64_t> small(1, 1000);
  CalibrationConfig config;
  for (int i = 0; i < 500; ++i) {
    config.n = small(rng);
    std::int64_t collab = config.n + static_cast<std::int64_t>(rng() % 100000);
    Rational value(val(rng), small(rng));
    Rational k(small(rng), small(rng));
    MeasureValue base{MeasureKind::total_citations, value, {2000, 2005}, "x"};
    MeasureValue scaled{MeasureKind::total_citations, value * k, {2000, 2005}, "x"};
    CHECK(calibrate_aggregate(scaled, collab, config).calibrated_value ==
          calibrate_aggregate(base, collab, config).calibrated_value * k);
  }
}

TEST_CASE("fractional weights assign each paper its own factor") {
  CalibrationConfig config;
  std::vector<PaperRecord> papers(2);
  papers[0].paper_id = "p-small";
  papers[0].collaboration_size = 2;
  papers[1].paper_id = "p-big";
  papers[1].collaboration_size = 100;
  auto weights = fractional_weights(papers, config);
  CHECK(weights.at("p-small") == Rational(1));
  CHECK(weights.at("p-big") == Rational(1, 10));

  for (auto& p : papers) p.collaboration_size = 3;
  weights = fractional_weights(papers, config);
  for (const auto& [id, w] : weights) {
    (void)id;
    CHECK(w == Rational(1));
  }
}

TEST_CASE("weighted h with unit weights equals the integer h-index") {
  std::vector<WeightedPaper> sample;
  for (std::int64_t c : {10, 8, 5, 4, 3}) sample.push_back({c, Rational(1)});
  CHECK(calibrated_h_index(sample) == Rational(4));

  std::mt19937_64 rng(2025);
  std::uniform_int_distribution<std::size_t> len(0, 60);
  std::uniform_int_distribution<std::int64_t> count(0, 120);
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::int64_t> counts(len(rng));
    for (auto& c : counts) c = count(rng);
    std::vector<WeightedPaper> papers;
    for (auto c : counts) papers.push_back({c, Rational(1)});
    CHECK(calibrated_h_index(papers) == Rational(h_index_oracle(counts)));
  }
}

TEST_CASE("weighted h handles down-weighted portfolios") {
  // 50 papers at 100 citations, each carrying 1/10 credit: total weight 5
  std::vector<WeightedPaper> papers(50, WeightedPaper{100, Rational(1, 10)});
  Rational h = calibrated_h_index(papers);
  CHECK(h == Rational(5));
  check_weighted_h(papers, h);

  CHECK(calibrated_h_index(std::vector<WeightedPaper>{}) == Rational(0));

  // fractional answers appear when the crossing lands between counts
  std::vector<WeightedPaper> mixed;
  for (std::int64_t c : {10, 8, 5, 4, 3}) mixed.push_back({c, Rational(1, 2)});
  Rational hm = calibrated_h_index(mixed);
  CHECK(hm == Rational(5, 2));
  check_weighted_h(mixed, hm);
}

TEST_CASE("weighted h agrees with the feasibility oracle on random inputs") {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<std::size_t> len(0, 40);
  std::uniform_int_distribution<std::int64_t> count(0, 60);
  std::uniform_int_distribution<std::int64_t> wden(1, 8);
  for (int i = 0; i < 300; ++i) {
    std::vector<WeightedPaper> papers(len(rng));
    for (auto& p : papers) {
      p.citation_count = count(rng);
      std::int64_t d = wden(rng);
      p.weight = Rational(1 + static_cast<std::int64_t>(rng() % d), d);
    }
    check_weighted_h(papers, calibrated_h_index(papers));
  }
}

TEST_CASE("weighted h rejects out-of-range weights") {
  CHECK_THROWS_AS(calibrated_h_index(std::vector<WeightedPaper>{{5, Rational(0)}}), InvalidWeight);
  CHECK_THROWS_AS(calibrated_h_index(std::vector<WeightedPaper>{{5, Rational(3, 2)}}),
                  InvalidWeight);
  CHECK_THROWS_AS(calibrated_h_index(std::vector<WeightedPaper>{{5, Rational(-1, 2)}}),
                  InvalidWeight);
}

TEST_CASE("weighted h grows with weights and citation counts") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<std::size_t> len(1, 30);
  std::uniform_int_distribution<std::int64_t> count(0, 50);
  for (int i = 0; i < 200; ++i) {
    std::vector<WeightedPaper> papers(len(rng));
    for (auto& p : papers) {
      p.citation_count = count(rng);
      p.weight = Rational(1 + static_cast<std::int64_t>(rng() % 4), 4);
    }
    Rational before = calibrated_h_index(papers);

    auto more_cited = papers;
    more_cited[i % more_cited.size()].citation_count += 1 + count(rng);
    CHECK(calibrated_h_index(more_cited) >= before);

    auto heavier = papers;
    auto& w = heavier[i % heavier.size()].weight;
    w = std::min(Rational(1), w + Rational(1, 8));
    CHECK(calibrated_h_index(heavier) >= before);
  }
}
