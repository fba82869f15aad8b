#pragma once

#include <cstdint>
#include <string>

#include "pvgait/types.hpp"

namespace pvgait {

// A sequence of feature vectors with an optional parallel gait-phase track.
// Column i of values is the i-th feature vector; postures is either empty or
// one cyclic phase in [0, 2) per column.
struct FeatureSeq {
  MatrixX values;   // d x n
  ArrayX postures;  // size n or 0

  Eigen::Index length() const { return values.cols(); }
  Eigen::Index dim() const { return values.rows(); }
};

// Non-negative score with an explicit no-match state, so pruned comparisons
// can never masquerade as large-but-finite distances.
class Distance {
 public:
  Distance() = default;
  static Distance finite(Scalar v);
  static Distance infinite();

  bool is_infinite() const { return infinite_; }
  Scalar value() const;  // +inf when infinite

  friend bool operator==(const Distance& a, const Distance& b);
  friend bool operator<(const Distance& a, const Distance& b);

 private:
  Scalar value_ = 0;
  bool infinite_ = false;
};

// Cyclic gap between two phases on the [0, 2) scale; always in [0, 1].
Scalar dist_posture(Scalar a, Scalar b);

// Sum over i of |a_i - b_i|_2. Lengths must match.
Distance euclid_seq(const FeatureSeq& a, const FeatureSeq& b);

// Exact minimum-cost warp by dynamic programming, O(n*m) time.
Distance dtw_full(const FeatureSeq& a, const FeatureSeq& b);

struct ModifiedDtwParams {
  Scalar thr_prune = 0.1;  // head-phase gate; above it the pair scores infinite
  Scalar weight = 1.0;     // accepted for configuration compatibility; unused
  bool normalize = false;  // divide the sum by the visited path length
};

struct ModifiedDtwResult {
  Distance distance;
  std::uint64_t iterations = 0;  // cells visited; never exceeds n + m
};

// Phase-guided greedy warp in O(n + m): a single pass whose advance direction
// minimizes the successor phase gap. Both sequences need postures.
ModifiedDtwResult dtw_modified_traced(const FeatureSeq& a, const FeatureSeq& b,
                                      const ModifiedDtwParams& params = {});
Distance dtw_modified(const FeatureSeq& a, const FeatureSeq& b,
                      const ModifiedDtwParams& params = {});

enum class Metric { Euclid, Dtw, ModifiedDtw };

std::string metric_name(Metric m);          // "euclid", "dtw", "mdtw"
Metric metric_from_name(const std::string& name);

}  // namespace pvgait
