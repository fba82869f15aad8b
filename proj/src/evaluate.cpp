#include "pvgait/evaluate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pvgait/errors.hpp"

namespace pvgait {

namespace {

Scalar mean_of(const std::vector<Scalar>& xs) {
  Scalar sum = 0;
  for (Scalar x : xs) sum += x;
  return xs.empty() ? 0 : sum / static_cast<Scalar>(xs.size());
}

// Population standard deviation; trace sets are complete, not sampled.
Scalar std_of(const std::vector<Scalar>& xs) {
  if (xs.size() < 2) return 0;
  const Scalar mu = mean_of(xs);
  Scalar sum = 0;
  for (Scalar x : xs) sum += (x - mu) * (x - mu);
  return std::sqrt(sum / static_cast<Scalar>(xs.size()));
}

std::string fmt(Scalar v, const char* format = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

}  // namespace

StepTraceMetrics step_metrics(const std::vector<StepEvent>& predicted,
                              const std::vector<StepEvent>& truth) {
  if (truth.empty()) throw std::invalid_argument("truth trace has no steps");
  StepTraceMetrics m;
  m.predicted = predicted.size();
  m.truth = truth.size();
  m.relative_error_pct = 100 *
      (static_cast<Scalar>(m.predicted) - static_cast<Scalar>(m.truth)) /
      static_cast<Scalar>(m.truth);
  m.abs_error_pct = std::abs(m.relative_error_pct);
  return m;
}

StepMetrics aggregate_step_metrics(const std::vector<StepTraceMetrics>& traces) {
  StepMetrics out;
  out.traces = traces;
  std::vector<Scalar> rel, abs;
  for (const StepTraceMetrics& t : traces) {
    rel.push_back(t.relative_error_pct);
    abs.push_back(t.abs_error_pct);
    out.count_confusion[{t.truth, t.predicted}] += 1;
  }
  out.mean_relative_pct = mean_of(rel);
  out.std_relative_pct = std_of(rel);
  out.mean_abs_pct = mean_of(abs);
  out.std_abs_pct = std_of(abs);
  return out;
}

Scalar within_band_accuracy(const StepMetrics& m, std::size_t band) {
  if (m.traces.empty()) return 0;
  std::size_t hit = 0;
  for (const StepTraceMetrics& t : m.traces) {
    const auto diff = t.predicted > t.truth ? t.predicted - t.truth : t.truth - t.predicted;
    if (diff <= band) ++hit;
  }
  return static_cast<Scalar>(hit) / static_cast<Scalar>(m.traces.size());
}

Scalar step_match_rate(const std::vector<StepEvent>& predicted,
                       const std::vector<StepEvent>& truth, Scalar tol_s) {
  if (truth.empty()) throw std::invalid_argument("truth trace has no steps");
  std::vector<bool> used(predicted.size(), false);
  std::size_t matched = 0;
  std::size_t cursor = 0;
  for (const StepEvent& t : truth) {
    while (cursor < predicted.size() && predicted[cursor].t < t.t - tol_s) ++cursor;
    for (std::size_t j = cursor; j < predicted.size() && predicted[j].t <= t.t + tol_s;
         ++j) {
      if (!used[j] && predicted[j].foot == t.foot) {
        used[j] = true;
        ++matched;
        break;
      }
    }
  }
  return static_cast<Scalar>(matched) / static_cast<Scalar>(truth.size());
}

Scalar ConfusionMatrix::accuracy() const {
  const std::int64_t total = counts.sum();
  if (total == 0) return 0;
  return static_cast<Scalar>(counts.diagonal().sum()) / static_cast<Scalar>(total);
}

ConfusionMatrix confusion(
    const std::vector<std::pair<std::string, std::string>>& true_predicted) {
  std::set<std::string> labels;
  for (const auto& [t, p] : true_predicted) {
    labels.insert(t);
    labels.insert(p);
  }
  ConfusionMatrix cm;
  cm.labels.assign(labels.begin(), labels.end());
  const auto n = static_cast<Eigen::Index>(cm.labels.size());
  cm.counts = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  auto index = [&](const std::string& label) {
    return static_cast<Eigen::Index>(
        std::lower_bound(cm.labels.begin(), cm.labels.end(), label) - cm.labels.begin());
  };
  for (const auto& [t, p] : true_predicted) cm.counts(index(t), index(p)) += 1;
  return cm;
}

Scalar percentile_nearest_rank(std::vector<Scalar> values, Scalar p) {
  if (values.empty()) throw std::invalid_argument("no values for a percentile");
  if (!(p >= 0 && p <= 100)) throw std::invalid_argument("percentile outside [0, 100]");
  std::sort(values.begin(), values.end());
  if (p == 0) return values.front();
  const auto rank = static_cast<std::size_t>(
      std::ceil(p / 100 * static_cast<Scalar>(values.size())));
  return values[rank - 1];
}

LocalizationReport localization_report(
    const std::vector<std::pair<Vec2, Vec2>>& estimate_truth) {
  if (estimate_truth.empty()) throw std::invalid_argument("no localization pairs");
  LocalizationReport r;
  for (const auto& [est, truth] : estimate_truth) {
    r.errors.push_back((est - truth).norm());
  }
  r.median = percentile_nearest_rank(r.errors, 50);
  r.p80 = percentile_nearest_rank(r.errors, 80);
  r.max = *std::max_element(r.errors.begin(), r.errors.end());

  const auto cells = static_cast<std::size_t>(std::ceil(r.max * 100 - 1e-9));
  std::vector<Scalar> sorted = r.errors;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t c = 0; c <= cells; ++c) {
    const Scalar e = static_cast<Scalar>(c) / 100;
    const auto covered = static_cast<std::size_t>(
        std::upper_bound(sorted.begin(), sorted.end(), e + 1e-12) - sorted.begin());
    r.cdf.emplace_back(e, static_cast<Scalar>(covered) / static_cast<Scalar>(sorted.size()));
  }
  if (r.cdf.back().second < 1.0) {
    r.cdf.emplace_back(static_cast<Scalar>(cells + 1) / 100, 1.0);
  }
  return r;
}

std::vector<BenchResult> bench_similarity(const FingerprintDb& db,
                                          const std::vector<LabeledQuery>& queries,
                                          const std::vector<Metric>& methods,
                                          const KnnConfig& base_cfg) {
  if (queries.empty()) throw std::invalid_argument("no bench queries");
  std::vector<BenchResult> out;
  for (Metric metric : methods) {
    KnnConfig cfg = base_cfg;
    cfg.metric = metric;
    BenchResult r;
    r.metric = metric;
    r.queries = queries.size();

    std::uint64_t iterations = 0;
    std::size_t correct = 0;
    std::size_t no_match = 0;
    const auto start = std::chrono::steady_clock::now();
    for (const LabeledQuery& q : queries) {
      if (metric == Metric::ModifiedDtw) {
        ModifiedDtwParams params;
        params.thr_prune = cfg.thr_prune;
        for (const Fingerprint& entry : db.entries) {
          iterations += dtw_modified_traced(q.seq, entry.seq, params).iterations;
        }
      }
      try {
        if (identify(q.seq, db, cfg).subject == q.subject) ++correct;
      } catch (const NoMatchError&) {
        ++no_match;
      }
    }
    const auto stop = std::chrono::steady_clock::now();
    r.wall_time_s = std::chrono::duration<Scalar>(stop - start).count();
    r.accuracy = static_cast<Scalar>(correct) / static_cast<Scalar>(queries.size());
    r.iterations = iterations;
    r.no_match = no_match;
    out.push_back(r);
  }
  return out;
}

std::string render_step_table(const StepMetrics& m) {
  std::ostringstream os;
  os << "trace  truth  predicted  relative%  absolute%\n";
  for (std::size_t i = 0; i < m.traces.size(); ++i) {
    const StepTraceMetrics& t = m.traces[i];
    os << i << "  " << t.truth << "  " << t.predicted << "  "
       << fmt(t.relative_error_pct) << "  " << fmt(t.abs_error_pct) << "\n";
  }
  os << "mean_relative=" << fmt(m.mean_relative_pct)
     << " std_relative=" << fmt(m.std_relative_pct)
     << " mean_abs=" << fmt(m.mean_abs_pct) << " std_abs=" << fmt(m.std_abs_pct)
     << "\n";
  return os.str();
}

std::string step_metrics_ndjson(const StepMetrics& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.traces.size(); ++i) {
    const StepTraceMetrics& t = m.traces[i];
    os << "{\"record\":\"trace\",\"index\":" << i << ",\"truth\":" << t.truth
       << ",\"predicted\":" << t.predicted << ",\"relative_error_pct\":"
       << fmt(t.relative_error_pct, "%.17g") << ",\"abs_error_pct\":"
       << fmt(t.abs_error_pct, "%.17g") << "}\n";
  }
  os << "{\"record\":\"aggregate\",\"traces\":" << m.traces.size()
     << ",\"mean_relative_pct\":" << fmt(m.mean_relative_pct, "%.17g")
     << ",\"std_relative_pct\":" << fmt(m.std_relative_pct, "%.17g")
     << ",\"mean_abs_pct\":" << fmt(m.mean_abs_pct, "%.17g")
     << ",\"std_abs_pct\":" << fmt(m.std_abs_pct, "%.17g") << "}\n";
  return os.str();
}

std::string render_confusion(const ConfusionMatrix& cm) {
  std::ostringstream os;
  os << "truth\\predicted";
  for (const std::string& l : cm.labels) os << "  " << l;
  os << "\n";
  for (Eigen::Index i = 0; i < cm.counts.rows(); ++i) {
    os << cm.labels[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < cm.counts.cols(); ++j) os << "  " << cm.counts(i, j);
    os << "\n";
  }
  os << "accuracy=" << fmt(cm.accuracy()) << "\n";
  return os.str();
}

std::string render_localization(const LocalizationReport& r) {
  std::ostringstream os;
  os << "queries=" << r.errors.size() << " median_m=" << fmt(r.median)
     << " p80_m=" << fmt(r.p80) << " max_m=" << fmt(r.max) << "\n";
  return os.str();
}

std::string localization_cdf_csv(const LocalizationReport& r) {
  std::ostringstream os;
  os << "error_m,fraction\n";
  for (const auto& [e, f] : r.cdf) {
    os << fmt(e, "%.17g") << "," << fmt(f, "%.17g") << "\n";
  }
  return os.str();
}

std::string render_bench(const std::vector<BenchResult>& results) {
  std::ostringstream os;
  os << "metric  accuracy  wall_time_s  iterations  queries  no_match\n";
  for (const BenchResult& r : results) {
    os << metric_name(r.metric) << "  " << fmt(r.accuracy) << "  "
       << fmt(r.wall_time_s) << "  " << r.iterations << "  " << r.queries << "  "
       << r.no_match << "\n";
  }
  return os.str();
}

std::string bench_ndjson(const std::vector<BenchResult>& results) {
  std::ostringstream os;
  for (const BenchResult& r : results) {
    os << "{\"record\":\"bench\",\"metric\":\"" << metric_name(r.metric)
       << "\",\"accuracy\":" << fmt(r.accuracy, "%.17g")
       << ",\"wall_time_s\":" << fmt(r.wall_time_s, "%.17g")
       << ",\"iterations\":" << r.iterations << ",\"queries\":" << r.queries
       << ",\"no_match\":" << r.no_match << "}\n";
  }
  return os.str();
}

}  // namespace pvgait
