#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pvgait/filters.hpp"
#include "pvgait/track.hpp"

namespace pvgait {

enum class StepOrigin { Detected, Complemented };

struct StepEvent {
  Scalar t = 0;  // seconds
  Foot foot = Foot::Left;
  StepOrigin origin = StepOrigin::Detected;
};

struct StepDetectorConfig {
  Scalar prominence_thr = 0;  // volts/s, must be positive (see auto_prominence)
  Scalar refractory = 0.25;   // seconds; later events this close are dropped
  Scalar t_thr = 2.0;         // max same-foot gap the complement bridges
  bool fuse_placements = false;  // merge both cells of the foot instead of
                                 // reading the top-center cell alone
};

// 2x the median absolute slope of the channel: a per-trace default threshold
// that tracks the illumination level.
Scalar auto_prominence(const DerivStream& ds, ChannelId channel);

// Hysteresis detector on the voltage slope: a drop below -prominence_thr
// followed within one second by a swing above +prominence_thr yields one event
// at the positive peak. Events closer than refractory to the previous one are
// dropped.
std::vector<StepEvent> detect_steps(const DerivStream& ds, Foot foot,
                                    const StepDetectorConfig& cfg);

// Inserts the opposite foot at the midpoint of every same-foot pair closer
// than t_thr. Input events pass through untouched; input must be sorted.
std::vector<StepEvent> complement_missing(const std::vector<StepEvent>& events,
                                          Scalar t_thr);

// Cyclic gait phase on [0, 2): right-foot full extension at 0, left at 1.
struct PosturePoint {
  Scalar t = 0;
  Scalar posture = 0;
};

// Piecewise-linear phase between alternating steps, emitted every t_interval
// starting at each step and stopping short of the next one.
std::vector<PosturePoint> interpolate_posture(const std::vector<StepEvent>& events,
                                              Scalar t_interval);

// One matched (phase, voltages) point, optionally labeled with ground truth.
struct FeatureRecord {
  Scalar t = 0;
  Scalar posture = 0;
  Vec4 voltages = Vec4::Zero();  // channel_at(0..3) order
  std::optional<std::string> subject;
  std::optional<Vec2> location;
};

// Joins posture points with the stream's voltages at the same grid times.
// The stream must carry all four channels and cover the posture time range.
std::vector<FeatureRecord> assemble_features(
    const MultiStream& ms, const std::vector<PosturePoint>& postures,
    const std::optional<std::string>& subject = std::nullopt,
    const PositionTrack* track = nullptr);

// Moves complemented events onto the stream grid so downstream posture points
// stay grid-aligned; detected events already sit on it.
std::vector<StepEvent> snap_to_grid(std::vector<StepEvent> events, Scalar t0,
                                    Scalar grid_rate);

}  // namespace pvgait
