#include "pvgait/gait.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pvgait {

namespace {

constexpr Scalar kTimeEps = 1e-9;
// A step's rebound must begin within this long of its dip; later samples never
// change the decision.
constexpr Scalar kMaxDipToRise = 1.0;

void validate_detector(const StepDetectorConfig& cfg) {
  if (!(cfg.prominence_thr > 0)) {
    throw std::invalid_argument("prominence_thr must be positive");
  }
  if (!(cfg.refractory > 0) || !(cfg.t_thr > 0)) {
    throw std::invalid_argument("refractory and t_thr must be positive");
  }
  if (!(cfg.refractory < cfg.t_thr)) {
    throw std::invalid_argument("refractory must be smaller than t_thr");
  }
}

std::vector<StepEvent> detect_on_row(const DerivStream& ds, int row, Foot foot,
                                     const StepDetectorConfig& cfg) {
  const Scalar thr = cfg.prominence_thr;
  const Eigen::Index n = ds.size();
  std::vector<StepEvent> events;
  bool armed = false;
  Scalar t_dip = 0;
  Scalar last_kept = -std::numeric_limits<Scalar>::infinity();

  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar v = ds.values(row, i);
    const Scalar t = ds.time_at(i);
    if (v < -thr) {
      // The refractory window is dead time for the whole state machine: the
      // rebound's own falling tail would otherwise re-arm right after every
      // event and promote the next baseline climb into a phantom step.
      if (t - last_kept >= cfg.refractory) {
        armed = true;
        t_dip = t;
      }
      continue;
    }
    if (!armed) continue;
    if (t - t_dip > kMaxDipToRise) {
      armed = false;
      continue;
    }
    if (v > thr) {
      // Walk the positive excursion (entered above the threshold, extending
      // while the slope stays positive, capped at the latency bound) and place
      // the event on its highest sample. Extending past the threshold keeps a
      // noisy wobble near it from splitting one rebound into two events.
      Eigen::Index peak = i;
      Eigen::Index j = i;
      while (j < n && ds.values(row, j) > 0 &&
             ds.time_at(j) - t_dip <= kMaxDipToRise) {
        if (ds.values(row, j) > ds.values(row, peak)) peak = j;
        ++j;
      }
      const Scalar t_peak = ds.time_at(peak);
      if (t_peak - last_kept >= cfg.refractory) {
        events.push_back(StepEvent{t_peak, foot, StepOrigin::Detected});
        last_kept = t_peak;
      }
      armed = false;
      i = j - 1;
    }
  }
  return events;
}

std::vector<StepEvent> merge_within_refractory(std::vector<StepEvent> events,
                                               Scalar refractory) {
  std::stable_sort(events.begin(), events.end(),
                   [](const StepEvent& a, const StepEvent& b) { return a.t < b.t; });
  std::vector<StepEvent> out;
  for (const StepEvent& e : events) {
    if (out.empty() || e.t - out.back().t >= refractory) out.push_back(e);
  }
  return out;
}

}  // namespace

Scalar auto_prominence(const DerivStream& ds, ChannelId channel) {
  const int row = ds.row_of(channel);
  if (ds.size() == 0) throw std::invalid_argument("empty stream");
  std::vector<Scalar> mags(static_cast<std::size_t>(ds.size()));
  for (Eigen::Index i = 0; i < ds.size(); ++i) {
    mags[static_cast<std::size_t>(i)] = std::abs(ds.values(row, i));
  }
  auto mid = mags.begin() + mags.size() / 2;
  std::nth_element(mags.begin(), mid, mags.end());
  return 2 * *mid;
}

std::vector<StepEvent> detect_steps(const DerivStream& ds, Foot foot,
                                    const StepDetectorConfig& cfg) {
  validate_detector(cfg);
  if (ds.size() == 0) throw std::invalid_argument("empty stream");
  const ChannelId top{foot, Placement::TopCenter};
  if (!cfg.fuse_placements) {
    return detect_on_row(ds, ds.row_of(top), foot, cfg);
  }
  const ChannelId side{foot, Placement::OuterSide};
  std::vector<StepEvent> events = detect_on_row(ds, ds.row_of(top), foot, cfg);
  std::vector<StepEvent> more = detect_on_row(ds, ds.row_of(side), foot, cfg);
  events.insert(events.end(), more.begin(), more.end());
  return merge_within_refractory(std::move(events), cfg.refractory);
}

std::vector<StepEvent> complement_missing(const std::vector<StepEvent>& events,
                                          Scalar t_thr) {
  if (!(t_thr > 0)) throw std::invalid_argument("t_thr must be positive");
  std::vector<StepEvent> out = events;
  for (std::size_t i = 1; i < events.size(); ++i) {
    const StepEvent& prev = events[i - 1];
    const StepEvent& now = events[i];
    if (now.t < prev.t) throw std::invalid_argument("events are not sorted by time");
    if (now.foot == prev.foot && now.t - prev.t < t_thr) {
      out.push_back(StepEvent{(prev.t + now.t) / 2, opposite(now.foot),
                              StepOrigin::Complemented});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const StepEvent& a, const StepEvent& b) { return a.t < b.t; });
  return out;
}

std::vector<PosturePoint> interpolate_posture(const std::vector<StepEvent>& events,
                                              Scalar t_interval) {
  if (!(t_interval > 0) || !std::isfinite(t_interval)) {
    throw std::invalid_argument("t_interval must be positive");
  }
  std::vector<PosturePoint> out;
  if (events.size() < 2) return out;
  for (std::size_t i = 1; i < events.size(); ++i) {
    if (events[i].t <= events[i - 1].t) {
      throw std::invalid_argument("events are not strictly increasing in time");
    }
    if (events[i].foot == events[i - 1].foot) {
      throw std::invalid_argument(
          "feet do not alternate; complement the sequence first");
    }
  }
  // Right-foot full extension anchors even phase values, left anchors odd;
  // anchors advance by one per step and wrap on the [0, 2) cycle.
  Scalar anchor = events.front().foot == Foot::Right ? 0 : 1;
  for (std::size_t i = 1; i < events.size(); ++i) {
    const Scalar t_prev = events[i - 1].t;
    const Scalar t_now = events[i].t;
    const Scalar slope = 1 / (t_now - t_prev);
    for (Eigen::Index m = 0;; ++m) {
      const Scalar t = t_prev + static_cast<Scalar>(m) * t_interval;
      if (t >= t_now - kTimeEps) break;
      out.push_back(PosturePoint{t, std::fmod(anchor + (t - t_prev) * slope, Scalar(2))});
    }
    anchor += 1;
  }
  return out;
}

std::vector<FeatureRecord> assemble_features(const MultiStream& ms,
                                             const std::vector<PosturePoint>& postures,
                                             const std::optional<std::string>& subject,
                                             const PositionTrack* track) {
  int rows[kChannelCount];
  for (int c = 0; c < kChannelCount; ++c) rows[c] = ms.row_of(channel_at(c));

  std::vector<FeatureRecord> out;
  out.reserve(postures.size());
  const Scalar t_last = ms.size() > 0 ? ms.time_at(ms.size() - 1) : ms.t0;
  for (const PosturePoint& p : postures) {
    if (p.t < ms.t0 - kTimeEps || p.t > t_last + kTimeEps) {
      throw std::out_of_range("posture point outside the stream grid");
    }
    auto idx = static_cast<Eigen::Index>(std::llround((p.t - ms.t0) * ms.grid_rate));
    idx = std::clamp<Eigen::Index>(idx, 0, ms.size() - 1);
    FeatureRecord rec;
    rec.t = p.t;
    rec.posture = p.posture;
    for (int c = 0; c < kChannelCount; ++c) rec.voltages[c] = ms.values(rows[c], idx);
    rec.subject = subject;
    if (track != nullptr) rec.location = track->position_at(p.t);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<StepEvent> snap_to_grid(std::vector<StepEvent> events, Scalar t0,
                                    Scalar grid_rate) {
  if (!(grid_rate > 0)) throw std::invalid_argument("grid_rate must be positive");
  for (StepEvent& e : events) {
    if (e.origin == StepOrigin::Complemented) {
      e.t = t0 + static_cast<Scalar>(std::llround((e.t - t0) * grid_rate)) / grid_rate;
    }
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const StepEvent& a, const StepEvent& b) { return a.t < b.t; });
  return events;
}

}  // namespace pvgait
