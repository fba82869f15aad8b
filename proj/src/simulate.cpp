#include "pvgait/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace pvgait {

namespace {

constexpr Scalar kTimeEps = 1e-9;
constexpr Scalar kPi = 3.14159265358979323846;

void validate(const SubjectProfile& p, const LightMap& map, const WalkScenario& sc) {
  if (!(p.cadence > 0)) throw std::invalid_argument("cadence must be positive");
  if (!(p.cadence_jitter >= 0 && p.cadence_jitter < 1)) {
    throw std::invalid_argument("cadence_jitter must lie in [0, 1)");
  }
  if (!(p.amplitude >= 0)) throw std::invalid_argument("amplitude must be non-negative");
  if (!(p.asymmetry > 0)) throw std::invalid_argument("asymmetry must be positive");
  if (!(p.shape.width_factor > 0) || !(p.shape.rise_gain >= 0) ||
      !(p.shape.dip_fraction > 0 && p.shape.dip_fraction < 1)) {
    throw std::invalid_argument("step shape parameters out of range");
  }
  for (const LightSource& s : map.sources) {
    if (!(s.height > 0)) throw std::invalid_argument("light height must be positive");
    if (!(s.intensity > 0)) throw std::invalid_argument("light intensity must be positive");
  }
  if (!(map.ambient >= 0)) throw std::invalid_argument("ambient must be non-negative");
  if (sc.path.empty()) throw std::invalid_argument("walk path is empty");
  if (!(sc.speed >= 0)) throw std::invalid_argument("speed must be non-negative");
  if (!(sc.duration > 0)) throw std::invalid_argument("duration must be positive");
  if (!(sc.rate > 0)) throw std::invalid_argument("rate must be positive");
  if (!(sc.noise_sigma >= 0)) throw std::invalid_argument("noise_sigma must be non-negative");
}

// Arc-length walker over the scenario polyline. Closed paths loop; open paths
// ping-pong so the position stays continuous.
class PathWalker {
 public:
  PathWalker(const std::vector<Vec2>& path, Scalar speed) : points_(path), speed_(speed) {
    cum_.push_back(0);
    for (std::size_t i = 1; i < points_.size(); ++i) {
      cum_.push_back(cum_.back() + (points_[i] - points_[i - 1]).norm());
    }
    length_ = cum_.back();
    closed_ = points_.size() > 2 && (points_.front() - points_.back()).norm() < 1e-12;
  }

  Vec2 at(Scalar t) const {
    if (length_ <= 0 || speed_ <= 0) return points_.front();
    Scalar s = speed_ * t;
    if (closed_) {
      s = std::fmod(s, length_);
    } else {
      s = std::fmod(s, 2 * length_);
      if (s > length_) s = 2 * length_ - s;
    }
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    std::size_t hi = std::min<std::size_t>(
        static_cast<std::size_t>(it - cum_.begin()), cum_.size() - 1);
    if (hi == 0) hi = 1;
    const std::size_t lo = hi - 1;
    const Scalar seg = cum_[hi] - cum_[lo];
    const Scalar theta = seg > 0 ? (s - cum_[lo]) / seg : 0;
    return points_[lo] + theta * (points_[hi] - points_[lo]);
  }

 private:
  std::vector<Vec2> points_;
  std::vector<Scalar> cum_;
  Scalar length_ = 0;
  Scalar speed_ = 0;
  bool closed_ = false;
};

// Template value at offset u from the step event time (the dip-rise junction).
Scalar step_template(Scalar u, Scalar amp, const PhaseShape& shape, Scalar cadence) {
  const Scalar width = shape.width_factor / cadence;
  const Scalar w_dip = width * shape.dip_fraction;
  const Scalar w_rise = width - w_dip;
  if (u >= -w_dip && u < 0) {
    return -amp * std::sin(kPi * (u + w_dip) / w_dip);
  }
  if (u >= 0 && u <= w_rise) {
    return amp * shape.rise_gain * std::sin(kPi * u / w_rise);
  }
  return 0;
}

}  // namespace

Scalar LightMap::baseline_at(const Vec2& position) const {
  Scalar v = ambient;
  for (const LightSource& s : sources) {
    v += s.intensity / (1 + (position - s.position).squaredNorm());
  }
  return v;
}

SimResult generate(const SubjectProfile& profile, const LightMap& map,
                   const WalkScenario& scenario) {
  validate(profile, map, scenario);
  std::mt19937_64 rng(scenario.seed);

  // Ground-truth steps: alternating feet, jittered gaps, first step one gap in.
  std::vector<StepEvent> steps;
  {
    std::uniform_real_distribution<Scalar> jitter(-1.0, 1.0);
    Foot foot = Foot::Right;
    Scalar t = 0;
    while (true) {
      const Scalar gap =
          1 / (profile.cadence * (1 + profile.cadence_jitter * jitter(rng)));
      t += gap;
      if (t > scenario.duration + kTimeEps) break;
      steps.push_back(StepEvent{t, foot, StepOrigin::Detected});
      foot = opposite(foot);
    }
  }

  PathWalker walker(scenario.path, scenario.speed);

  // Track sampled densely enough for window labeling; covers [0, duration].
  PositionTrack track;
  {
    const auto n = static_cast<Eigen::Index>(
        std::floor(scenario.duration * scenario.rate + kTimeEps)) + 1;
    const bool pad = scenario.duration - static_cast<Scalar>(n - 1) / scenario.rate > kTimeEps;
    track.t.resize(n + (pad ? 1 : 0));
    track.xy.resize(2, track.t.size());
    for (Eigen::Index i = 0; i < n; ++i) {
      track.t[i] = static_cast<Scalar>(i) / scenario.rate;
      track.xy.col(i) = walker.at(track.t[i]);
    }
    if (pad) {
      track.t[n] = scenario.duration;
      track.xy.col(n) = walker.at(scenario.duration);
    }
  }

  // Integer-millisecond sample clock so the on-disk form is exact.
  std::vector<Scalar> times;
  {
    long long k = 0;
    while (true) {
      const auto ms = std::llround(static_cast<Scalar>(k) * 1000 / scenario.rate);
      const Scalar t = static_cast<Scalar>(ms) / 1000;
      if (t > scenario.duration + kTimeEps) break;
      times.push_back(t);
      ++k;
    }
  }

  const Scalar left_amp = profile.amplitude * profile.asymmetry;
  const Scalar right_amp = profile.amplitude;
  const Scalar width = profile.shape.width_factor / profile.cadence;

  std::vector<SampleStream> streams(kChannelCount);
  for (int c = 0; c < kChannelCount; ++c) {
    streams[c].channel = channel_at(c);
    streams[c].nominal_rate = scenario.rate;
    streams[c].samples.resize(times.size());
  }

  std::normal_distribution<Scalar> gauss(0.0, 1.0);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Scalar t = times[i];
    const Scalar base = map.baseline_at(walker.at(t));

    Scalar bump[2] = {0, 0};  // left, right
    auto lo = std::lower_bound(steps.begin(), steps.end(), t - width,
                               [](const StepEvent& e, Scalar v) { return e.t < v; });
    for (auto it = lo; it != steps.end() && it->t <= t + width; ++it) {
      const bool left = it->foot == Foot::Left;
      bump[left ? 0 : 1] += step_template(t - it->t, left ? left_amp : right_amp,
                                          profile.shape, profile.cadence);
    }
    for (int c = 0; c < kChannelCount; ++c) {
      const ChannelId id = channel_at(c);
      Scalar v = base + bump[id.foot == Foot::Left ? 0 : 1];
      if (scenario.noise_sigma > 0) v += scenario.noise_sigma * gauss(rng);
      streams[c].samples[i] = Sample{t, v};
    }
  }

  SimResult out;
  out.samples = std::move(streams);
  out.grid = resample_align(out.samples, scenario.rate);
  out.truth = GroundTruth{std::move(steps), std::move(track), profile.name};
  return out;
}

std::vector<SubjectProfile> default_profiles() {
  // Step signatures are deep: the foot shadows most of the panel, so the
  // swing dwarfs the location-dependent baseline drift. Stride intervals
  // carry the variability of real walking, which is what makes pointwise
  // sequence comparison fragile and phase-guided alignment worthwhile.
  std::vector<SubjectProfile> out;
  const Scalar cadences[] = {1.5, 1.6, 1.7, 1.8, 1.9, 2.0};
  const Scalar amplitudes[] = {1.05, 1.35, 1.65, 1.95, 2.25, 2.55};
  const Scalar asymmetries[] = {0.85, 1.10, 0.90, 1.15, 0.95, 1.05};
  const Scalar widths[] = {0.34, 0.38, 0.42, 0.46, 0.36, 0.44};
  for (int i = 0; i < 6; ++i) {
    SubjectProfile p;
    p.name = "s" + std::to_string(i + 1);
    p.cadence = cadences[i];
    p.cadence_jitter = 0.12;
    p.amplitude = amplitudes[i];
    p.asymmetry = asymmetries[i];
    p.shape.width_factor = widths[i];
    out.push_back(std::move(p));
  }
  return out;
}

LightMap default_light_map() {
  // A 6x5 ceiling grid over an 18 m x 11 m floor, intensities deliberately
  // uneven so no two floor positions share a baseline.
  LightMap map;
  map.ambient = 0.3;
  int i = 0;
  for (int gx = 0; gx < 6; ++gx) {
    for (int gy = 0; gy < 5; ++gy) {
      LightSource s;
      s.position = Vec2(1.5 + 3.0 * gx, 1.1 + 2.2 * gy);
      s.height = 2.7;
      s.intensity = 1.0 + 0.25 * std::sin(2.39996 * ++i);
      map.sources.push_back(s);
    }
  }
  return map;
}

std::vector<Vec2> default_loop_path() {
  return {Vec2(3, 3), Vec2(15, 3), Vec2(15, 8), Vec2(3, 8), Vec2(3, 3)};
}

}  // namespace pvgait
