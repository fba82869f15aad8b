#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pvgait/recognition.hpp"

namespace pvgait {

// Signed and absolute percentage error of one predicted step count.
struct StepTraceMetrics {
  std::size_t predicted = 0;
  std::size_t truth = 0;
  Scalar relative_error_pct = 0;
  Scalar abs_error_pct = 0;
};

StepTraceMetrics step_metrics(const std::vector<StepEvent>& predicted,
                              const std::vector<StepEvent>& truth);

// Mean/std aggregation plus a (true count, predicted count) tally.
struct StepMetrics {
  Scalar mean_relative_pct = 0;
  Scalar std_relative_pct = 0;
  Scalar mean_abs_pct = 0;
  Scalar std_abs_pct = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> count_confusion;
  std::vector<StepTraceMetrics> traces;
};

StepMetrics aggregate_step_metrics(const std::vector<StepTraceMetrics>& traces);

// Share of traces whose predicted count is within +/- band of the truth.
Scalar within_band_accuracy(const StepMetrics& m, std::size_t band);

// Fraction of truth steps matched by a same-foot prediction within tol_s.
// Greedy in time order; every prediction matches at most one truth step.
Scalar step_match_rate(const std::vector<StepEvent>& predicted,
                       const std::vector<StepEvent>& truth, Scalar tol_s);

struct ConfusionMatrix {
  std::vector<std::string> labels;  // sorted; indexes rows (truth) and columns
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts;

  Scalar accuracy() const;  // diagonal share; row sums recover query counts
};

ConfusionMatrix confusion(
    const std::vector<std::pair<std::string, std::string>>& true_predicted);

struct LocalizationReport {
  std::vector<Scalar> errors;  // meters, one per query, input order
  Scalar median = 0;
  Scalar p80 = 0;
  Scalar max = 0;
  std::vector<std::pair<Scalar, Scalar>> cdf;  // (error, share <=) at 1 cm steps
};

LocalizationReport localization_report(
    const std::vector<std::pair<Vec2, Vec2>>& estimate_truth);

struct LabeledQuery {
  FeatureSeq seq;
  std::string subject;
};

struct BenchResult {
  Metric metric = Metric::Euclid;
  Scalar accuracy = 0;
  Scalar wall_time_s = 0;        // single-threaded, whole query loop
  std::uint64_t iterations = 0;  // summed greedy-warp cells, 0 for other metrics
  std::size_t queries = 0;
  std::size_t no_match = 0;      // queries with every candidate pruned
};

// Runs the same identification loop per method on one database. No-match
// queries count against accuracy.
std::vector<BenchResult> bench_similarity(const FingerprintDb& db,
                                          const std::vector<LabeledQuery>& queries,
                                          const std::vector<Metric>& methods,
                                          const KnnConfig& base_cfg = {});

// Nearest-rank percentile on a copy; p in [0, 100].
Scalar percentile_nearest_rank(std::vector<Scalar> values, Scalar p);

// Fixed-layout text tables and newline-delimited machine-readable records.
std::string render_step_table(const StepMetrics& m);
std::string step_metrics_ndjson(const StepMetrics& m);
std::string render_confusion(const ConfusionMatrix& cm);
std::string render_localization(const LocalizationReport& r);
std::string localization_cdf_csv(const LocalizationReport& r);
std::string render_bench(const std::vector<BenchResult>& results);
std::string bench_ndjson(const std::vector<BenchResult>& results);

}  // namespace pvgait
