#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "pvgait/evaluate.hpp"

using namespace pvgait;

namespace {

std::vector<StepEvent> alternating(int n, Scalar gap, Scalar t0 = 1.0) {
  std::vector<StepEvent> out;
  for (int i = 0; i < n; ++i) {
    out.push_back({t0 + gap * i, i % 2 ? Foot::Left : Foot::Right,
                   StepOrigin::Detected});
  }
  return out;
}

}  // namespace

TEST_CASE("step_metrics computes signed and absolute errors") {
  const auto truth = alternating(100, 0.5);
  const auto pred = alternating(90, 0.5);
  const StepTraceMetrics m = step_metrics(pred, truth);
  CHECK(m.predicted == 90);
  CHECK(m.truth == 100);
  CHECK(m.relative_error_pct == doctest::Approx(-10.0));
  CHECK(m.abs_error_pct == doctest::Approx(10.0));
  CHECK_THROWS_AS(step_metrics(pred, {}), std::invalid_argument);
}

TEST_CASE("aggregate_step_metrics averages traces and tallies counts") {
  std::vector<StepTraceMetrics> traces;
  traces.push_back(step_metrics(alternating(95, 0.5), alternating(100, 0.5)));
  traces.push_back(step_metrics(alternating(105, 0.5), alternating(100, 0.5)));
  const StepMetrics m = aggregate_step_metrics(traces);
  CHECK(m.mean_relative_pct == doctest::Approx(0.0));
  CHECK(m.std_relative_pct == doctest::Approx(5.0));
  CHECK(m.mean_abs_pct == doctest::Approx(5.0));
  CHECK(m.count_confusion.at({100, 95}) == 1);
  CHECK(m.count_confusion.at({100, 105}) == 1);
  CHECK(within_band_accuracy(m, 5) == doctest::Approx(1.0));
  CHECK(within_band_accuracy(m, 4) == doctest::Approx(0.0));
}

TEST_CASE("step_match_rate pairs same-foot events within tolerance") {
  const auto truth = alternating(10, 0.5);
  SUBCASE("perfect predictions match fully") {
    CHECK(step_match_rate(truth, truth, 0.1) == doctest::Approx(1.0));
  }
  SUBCASE("shifted within tolerance still matches") {
    auto pred = truth;
    for (auto& e : pred) e.t += 0.05;
    CHECK(step_match_rate(pred, truth, 0.1) == doctest::Approx(1.0));
    CHECK(step_match_rate(pred, truth, 0.01) == doctest::Approx(0.0));
  }
  SUBCASE("wrong foot never matches") {
    auto pred = truth;
    for (auto& e : pred) e.foot = opposite(e.foot);
    CHECK(step_match_rate(pred, truth, 0.1) == doctest::Approx(0.0));
  }
  SUBCASE("each prediction consumes at most one truth step") {
    std::vector<StepEvent> pred = {truth[0], truth[0]};
    CHECK(step_match_rate(pred, truth, 0.1) == doctest::Approx(0.1));
  }
}

TEST_CASE("confusion matrix sums and accuracy") {
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"ada", "ada"}, {"ada", "bob"}, {"bob", "bob"},
      {"bob", "bob"}, {"eve", "ada"}, {"eve", "eve"}};
  const ConfusionMatrix cm = confusion(pairs);
  REQUIRE(cm.labels == std::vector<std::string>{"ada", "bob", "eve"});
  CHECK(cm.counts(0, 0) == 1);
  CHECK(cm.counts(0, 1) == 1);
  CHECK(cm.counts(1, 1) == 2);
  CHECK(cm.counts(2, 0) == 1);
  CHECK(cm.counts(2, 2) == 1);
  CHECK(cm.accuracy() == doctest::Approx(4.0 / 6.0));
  // Row sums recover per-label query counts.
  CHECK(cm.counts.row(0).sum() == 2);
  CHECK(cm.counts.row(1).sum() == 2);
  CHECK(cm.counts.row(2).sum() == 2);
}

TEST_CASE("percentile_nearest_rank against a sort-based oracle") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<Scalar> val(0.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Scalar> xs;
    const int n = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) xs.push_back(val(rng));
    for (Scalar p : {0.0, 10.0, 50.0, 80.0, 95.0, 100.0}) {
      std::vector<Scalar> sorted = xs;
      std::sort(sorted.begin(), sorted.end());
      const std::size_t rank =
          p <= 0 ? 1
                 : static_cast<std::size_t>(
                       std::ceil(p / 100.0 * static_cast<double>(n)));
      const Scalar oracle = sorted[std::max<std::size_t>(rank, 1) - 1];
      CHECK(std::abs(percentile_nearest_rank(xs, p) - oracle) <= 1e-9);
    }
  }
}

TEST_CASE("localization_report orders errors and builds a monotone CDF") {
  std::vector<std::pair<Vec2, Vec2>> pairs;
  pairs.push_back({Vec2(0, 0), Vec2(0, 0)});        // 0 m
  pairs.push_back({Vec2(1, 0), Vec2(0, 0)});        // 1 m
  pairs.push_back({Vec2(0, 2), Vec2(0, 0)});        // 2 m
  pairs.push_back({Vec2(3, 4), Vec2(0, 0)});        // 5 m
  const LocalizationReport r = localization_report(pairs);
  REQUIRE(r.errors.size() == 4);
  CHECK(r.errors[3] == doctest::Approx(5.0));
  CHECK(r.median == doctest::Approx(1.0));  // nearest-rank median of {0,1,2,5}
  CHECK(r.max == doctest::Approx(5.0));
  REQUIRE(!r.cdf.empty());
  Scalar prev = -1;
  for (const auto& [err, share] : r.cdf) {
    CHECK(share >= prev - 1e-12);
    prev = share;
    CHECK(share <= 1.0 + 1e-12);
  }
  CHECK(r.cdf.back().second == doctest::Approx(1.0));
}

TEST_CASE("render helpers emit stable machine-readable lines") {
  std::vector<StepTraceMetrics> traces;
  traces.push_back(step_metrics(alternating(95, 0.5), alternating(100, 0.5)));
  const StepMetrics m = aggregate_step_metrics(traces);
  const std::string ndjson = step_metrics_ndjson(m);
  CHECK(ndjson.find("\"record\":\"trace\"") != std::string::npos);
  CHECK(ndjson.find("\"record\":\"aggregate\"") != std::string::npos);
  CHECK(ndjson.back() == '\n');
  const std::string table = render_step_table(m);
  CHECK(table.find("truth") != std::string::npos);

  const LocalizationReport lr =
      localization_report({{Vec2(0, 0), Vec2(1, 0)}});
  const std::string csv = localization_cdf_csv(lr);
  CHECK(csv.rfind("error_m,fraction", 0) == 0);
  CHECK(render_localization(lr).find("median") != std::string::npos);
}
