#include "pvgait/similarity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pvgait {

namespace {

void validate_pair(const FeatureSeq& a, const FeatureSeq& b, bool need_postures) {
  if (a.length() == 0 || b.length() == 0) {
    throw std::invalid_argument("sequences must be non-empty");
  }
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("sequences have different feature dimensions");
  }
  if (need_postures) {
    if (a.postures.size() != a.length() || b.postures.size() != b.length()) {
      throw std::invalid_argument("both sequences need one posture per element");
    }
  }
}

inline Scalar point_dist(const FeatureSeq& a, Eigen::Index i, const FeatureSeq& b,
                         Eigen::Index j) {
  return (a.values.col(i) - b.values.col(j)).norm();
}

}  // namespace

Distance Distance::finite(Scalar v) {
  if (!(v >= 0) || !std::isfinite(v)) {
    throw std::invalid_argument("distance must be finite and non-negative");
  }
  Distance d;
  d.value_ = v;
  return d;
}

Distance Distance::infinite() {
  Distance d;
  d.value_ = std::numeric_limits<Scalar>::infinity();
  d.infinite_ = true;
  return d;
}

Scalar Distance::value() const { return value_; }

bool operator==(const Distance& a, const Distance& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

bool operator<(const Distance& a, const Distance& b) {
  if (a.infinite_) return false;
  if (b.infinite_) return true;
  return a.value_ < b.value_;
}

Scalar dist_posture(Scalar a, Scalar b) {
  const Scalar gap = std::abs(a - b);
  return std::min(gap, Scalar(2) - gap);
}

Distance euclid_seq(const FeatureSeq& a, const FeatureSeq& b) {
  validate_pair(a, b, false);
  if (a.length() != b.length()) {
    throw std::invalid_argument("per-index distance needs equal lengths");
  }
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < a.length(); ++i) sum += point_dist(a, i, b, i);
  return Distance::finite(sum);
}

Distance dtw_full(const FeatureSeq& a, const FeatureSeq& b) {
  validate_pair(a, b, false);
  const Eigen::Index n = a.length();
  const Eigen::Index m = b.length();
  // Two rolling rows; row[j] is the best cost ending at (i, j).
  ArrayX prev(m), curr(m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const Scalar d = point_dist(a, i, b, j);
      Scalar best;
      if (i == 0 && j == 0) {
        best = 0;
      } else if (i == 0) {
        best = curr[j - 1];
      } else if (j == 0) {
        best = prev[j];
      } else {
        best = std::min({prev[j - 1], prev[j], curr[j - 1]});
      }
      curr[j] = d + best;
    }
    std::swap(prev, curr);
  }
  return Distance::finite(prev[m - 1]);
}

ModifiedDtwResult dtw_modified_traced(const FeatureSeq& a, const FeatureSeq& b,
                                      const ModifiedDtwParams& params) {
  validate_pair(a, b, true);
  if (!(params.thr_prune >= 0)) {
    throw std::invalid_argument("thr_prune must be non-negative");
  }
  const Eigen::Index n = a.length();
  const Eigen::Index m = b.length();

  if (dist_posture(a.postures[0], b.postures[0]) > params.thr_prune) {
    return {Distance::infinite(), 0};
  }

  const auto cap = static_cast<std::uint64_t>(n + m);
  std::uint64_t iterations = 0;
  Scalar sum = 0;
  Eigen::Index i = 0;
  Eigen::Index j = 0;

  auto visit = [&](Eigen::Index vi, Eigen::Index vj) {
    sum += point_dist(a, vi, b, vj);
    if (++iterations > cap) {
      throw std::logic_error("greedy warp exceeded its linear iteration bound");
    }
  };

  while (i + 1 < n && j + 1 < m) {
    visit(i, j);
    const Scalar diag = dist_posture(a.postures[i + 1], b.postures[j + 1]);
    const Scalar down = dist_posture(a.postures[i + 1], b.postures[j]);
    const Scalar right = dist_posture(a.postures[i], b.postures[j + 1]);
    // Ties prefer the diagonal, then advancing i, then advancing j.
    if (diag <= down && diag <= right) {
      ++i;
      ++j;
    } else if (down <= right) {
      ++i;
    } else {
      ++j;
    }
  }
  // One sequence is at its last element; sweep the other's tail against it.
  while (i + 1 < n) visit(i++, j);
  while (j + 1 < m) visit(i, j++);
  visit(i, j);

  Scalar out = sum;
  if (params.normalize) out = sum / static_cast<Scalar>(iterations);
  return {Distance::finite(out), iterations};
}

Distance dtw_modified(const FeatureSeq& a, const FeatureSeq& b,
                      const ModifiedDtwParams& params) {
  return dtw_modified_traced(a, b, params).distance;
}

std::string metric_name(Metric m) {
  switch (m) {
    case Metric::Euclid: return "euclid";
    case Metric::Dtw: return "dtw";
    case Metric::ModifiedDtw: return "mdtw";
  }
  throw std::invalid_argument("unknown metric");
}

Metric metric_from_name(const std::string& name) {
  if (name == "euclid") return Metric::Euclid;
  if (name == "dtw") return Metric::Dtw;
  if (name == "mdtw") return Metric::ModifiedDtw;
  throw std::invalid_argument("unknown metric '" + name + "'");
}

}  // namespace pvgait
