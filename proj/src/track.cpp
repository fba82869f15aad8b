#include "pvgait/track.hpp"

#include <stdexcept>

namespace pvgait {

Vec2 PositionTrack::position_at(Scalar time) const {
  if (t.size() == 0 || xy.cols() != t.size()) {
    throw std::invalid_argument("track is empty or inconsistent");
  }
  if (time <= t[0]) return xy.col(0);
  const Eigen::Index last = t.size() - 1;
  if (time >= t[last]) return xy.col(last);
  // Binary search for the segment containing time.
  Eigen::Index lo = 0;
  Eigen::Index hi = last;
  while (hi - lo > 1) {
    const Eigen::Index mid = (lo + hi) / 2;
    (t[mid] <= time ? lo : hi) = mid;
  }
  const Scalar theta = (time - t[lo]) / (t[hi] - t[lo]);
  return xy.col(lo) + theta * (xy.col(hi) - xy.col(lo));
}

}  // namespace pvgait
