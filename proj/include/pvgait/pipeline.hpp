// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pvgait/filters.hpp"
#include "pvgait/gait.hpp"
#include "pvgait/signal.hpp"
#include "pvgait/track.hpp"

namespace pvgait {

// End-to-end processing of raw photovoltaic channels into gait records:
// resample -> low-pass -> derivative -> step detection -> complement ->
// posture interpolation -> per-sample feature records.
struct PipelineConfig {
  Scalar grid_rate = 28.0;    // Hz, common grid for all channels
  FilterParams filter;        // low-pass smoothing factor
  StepDetectorConfig detector;  // prominence_thr <= 0 selects auto threshold
  Scalar t_interval = 0.0;    // posture sampling period; <= 0 means one grid step
  bool complement = true;     // infer missed steps from same-foot gaps
};

struct PipelineOutput {
  MultiStream grid;                // low-passed, grid-aligned voltages
  std::vector<StepEvent> detected;  // raw detector output (pre-complement)
  std::vector<StepEvent> steps;        // after complement, grid-snapped
  std::vector<FeatureRecord> records;  // posture-interpolated feature stream
};

PipelineOutput run_pipeline(const std::vector<SampleStream>& raw,
                            const PipelineConfig& cfg,
                            const std::optional<std::string>& subject = std::nullopt,
                            const PositionTrack* track = nullptr);

// Same pipeline, entered after grid alignment (e.g. for simulator output that
// is already uniformly sampled).
PipelineOutput run_pipeline_on_grid(const MultiStream& grid,
                                    const PipelineConfig& cfg,
                                    const std::optional<std::string>& subject = std::nullopt,
                                    const PositionTrack* track = nullptr);

}  // namespace pvgait
