// SPDX-License-Identifier: MIT
#include "pvgait/pipeline.hpp"

#include <algorithm>
#include <cmath>

namespace pvgait {
namespace {

constexpr Scalar kTimeEps = 1e-9;

// Keeps only events that strictly alternate feet and strictly advance in
// time, so that posture interpolation always sees a valid left/right/left
// chain. Detector misses the complement could not bridge (gap >= t_thr)
// surface as same-foot pairs here, and a complemented midpoint can snap onto
// the grid instant of a neighboring event; the earlier event wins either way.
std::vector<StepEvent> alternating_chain(const std::vector<StepEvent>& events) {
  std::vector<StepEvent> out;
  out.reserve(events.size());
  for (const StepEvent& e : events) {
    if (!out.empty() &&
        (out.back().foot == e.foot || e.t <= out.back().t + kTimeEps)) {
      continue;
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace

PipelineOutput run_pipeline_on_grid(const MultiStream& grid,
                                    const PipelineConfig& cfg,
                                    const std::optional<std::string>& subject,
                                    const PositionTrack* track) {
  PipelineOutput out;
  out.grid = low_pass(grid, cfg.filter.alpha);
  const DerivStream slope = derivative(out.grid);

  StepDetectorConfig det = cfg.detector;
  std::vector<StepEvent> events;
  for (Foot foot : {Foot::Left, Foot::Right}) {
    StepDetectorConfig per_foot = det;
    if (per_foot.prominence_thr <= 0) {
      const Scalar auto_thr =
          auto_prominence(slope, ChannelId{foot, Placement::TopCenter});
      per_foot.prominence_thr = std::max(auto_thr, Scalar(1e-12));
    }
    std::vector<StepEvent> found = detect_steps(slope, foot, per_foot);
    events.insert(events.end(), found.begin(), found.end());
  }
  std::sort(events.begin(), events.end(),
            [](const StepEvent& a, const StepEvent& b) { return a.t < b.t; });
  out.detected = events;

  out.steps = cfg.complement ? complement_missing(events, det.t_thr) : events;
  out.steps = snap_to_grid(std::move(out.steps), out.grid.t0, out.grid.grid_rate);

  const Scalar t_interval =
      cfg.t_interval > 0 ? cfg.t_interval : 1.0 / out.grid.grid_rate;
  const std::vector<StepEvent> chain = alternating_chain(out.steps);
  if (chain.size() >= 2) {
    const std::vector<PosturePoint> postures =
        interpolate_posture(chain, t_interval);
    out.records = assemble_features(out.grid, postures, subject, track);
  }
  return out;
}

PipelineOutput run_pipeline(const std::vector<SampleStream>& raw,
                            const PipelineConfig& cfg,
                            const std::optional<std::string>& subject,
                            const PositionTrack* track) {
  return run_pipeline_on_grid(resample_align(raw, cfg.grid_rate), cfg, subject,
                              track);
}

}  // namespace pvgait
