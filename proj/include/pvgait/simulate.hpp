#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pvgait/gait.hpp"
#include "pvgait/signal.hpp"
#include "pvgait/track.hpp"

namespace pvgait {

// Dip-rise step signature: one negative half-cosine (stance shadowing) then a
// positive half-cosine (swing exposure), total width width_factor / cadence
// seconds. The event time sits at the dip-to-rise junction, where the voltage
// climbs fastest.
struct PhaseShape {
  Scalar width_factor = 0.4;
  Scalar dip_fraction = 0.5;  // share of the width spent in the dip
  Scalar rise_gain = 1.0;     // rise amplitude relative to the dip depth
};

struct SubjectProfile {
  std::string name = "subject";
  Scalar cadence = 2.0;          // steps per second
  Scalar cadence_jitter = 0.05;  // relative gap variation, in [0, 1)
  Scalar amplitude = 0.5;        // volts, dip depth on the stepping foot
  Scalar asymmetry = 1.0;        // left amplitude / right amplitude
  PhaseShape shape;
};

struct LightSource {
  Vec2 position = Vec2::Zero();  // meters
  Scalar height = 2.7;           // meters; scene description, not in the falloff
  Scalar intensity = 1.0;        // volts directly underneath
};

struct LightMap {
  std::vector<LightSource> sources;
  Scalar ambient = 0.3;  // volts

  // ambient + sum of intensity / (1 + d^2), d the horizontal distance.
  Scalar baseline_at(const Vec2& position) const;
};

struct WalkScenario {
  std::vector<Vec2> path;    // polyline; loops when first == last, else ping-pongs
  Scalar speed = 1.2;        // m/s
  Scalar duration = 30.0;    // seconds
  Scalar rate = 28.0;        // Hz, nominal sampling rate
  Scalar noise_sigma = 0.0;  // volts, per sample per channel
  std::uint64_t seed = 1;
};

struct GroundTruth {
  std::vector<StepEvent> steps;  // alternating feet
  PositionTrack track;           // covers [0, duration]
  std::string subject;
};

struct SimResult {
  std::vector<SampleStream> samples;  // integer-millisecond timestamps
  MultiStream grid;                   // the same data aligned at scenario.rate
  GroundTruth truth;
};

// Deterministic for a fixed scenario seed.
SimResult generate(const SubjectProfile& profile, const LightMap& map,
                   const WalkScenario& scenario);

// Built-in roster and lab scene backing the CLI defaults.
std::vector<SubjectProfile> default_profiles();
LightMap default_light_map();
std::vector<Vec2> default_loop_path();

}  // namespace pvgait
