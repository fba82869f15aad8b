#include "pvgait/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pvgait {

namespace {

constexpr Scalar kTimeEps = 1e-9;

void validate_stream(const SampleStream& s) {
  if (s.samples.size() < 2) {
    throw std::invalid_argument("stream '" + channel_label(s.channel) +
                                "' needs at least two samples to resample");
  }
  for (std::size_t i = 0; i < s.samples.size(); ++i) {
    if (!std::isfinite(s.samples[i].t) || !std::isfinite(s.samples[i].v)) {
      throw std::invalid_argument("stream '" + channel_label(s.channel) +
                                  "' contains a non-finite sample");
    }
    if (i > 0 && s.samples[i].t <= s.samples[i - 1].t) {
      throw std::invalid_argument("stream '" + channel_label(s.channel) +
                                  "' timestamps are not strictly increasing");
    }
  }
}

// Piecewise-linear value at t; t must lie inside [front.t, back.t].
Scalar interp_at(const std::vector<Sample>& samples, Scalar t) {
  auto it = std::upper_bound(samples.begin(), samples.end(), t,
                             [](Scalar value, const Sample& s) { return value < s.t; });
  if (it == samples.begin()) return samples.front().v;
  if (it == samples.end()) return samples.back().v;
  const Sample& hi = *it;
  const Sample& lo = *(it - 1);
  if (t >= hi.t) return hi.v;
  const Scalar theta = (t - lo.t) / (hi.t - lo.t);
  return lo.v + theta * (hi.v - lo.v);
}

}  // namespace

Foot opposite(Foot f) { return f == Foot::Left ? Foot::Right : Foot::Left; }

std::string foot_label(Foot f) { return f == Foot::Left ? "L" : "R"; }

Foot foot_from_label(const std::string& label) {
  if (label == "L") return Foot::Left;
  if (label == "R") return Foot::Right;
  throw std::invalid_argument("unknown foot label '" + label + "'");
}

int channel_index(ChannelId id) {
  const int foot = id.foot == Foot::Left ? 0 : 1;
  const int placement = id.placement == Placement::TopCenter ? 0 : 1;
  return foot * 2 + placement;
}

ChannelId channel_at(int index) {
  if (index < 0 || index >= kChannelCount) {
    throw std::invalid_argument("channel index out of range");
  }
  return ChannelId{index < 2 ? Foot::Left : Foot::Right,
                   index % 2 == 0 ? Placement::TopCenter : Placement::OuterSide};
}

std::string channel_label(ChannelId id) {
  static const char* labels[kChannelCount] = {"lt", "ls", "rt", "rs"};
  return labels[channel_index(id)];
}

ChannelId channel_from_label(const std::string& label) {
  for (int i = 0; i < kChannelCount; ++i) {
    if (channel_label(channel_at(i)) == label) return channel_at(i);
  }
  throw std::invalid_argument("unknown channel label '" + label + "'");
}

const std::vector<ChannelId>& all_channels() {
  static const std::vector<ChannelId> channels = [] {
    std::vector<ChannelId> out;
    for (int i = 0; i < kChannelCount; ++i) out.push_back(channel_at(i));
    return out;
  }();
  return channels;
}

ArrayX MultiStream::times() const {
  ArrayX out(size());
  for (Eigen::Index i = 0; i < size(); ++i) out[i] = time_at(i);
  return out;
}

bool MultiStream::has_channel(ChannelId id) const {
  return std::find(channels.begin(), channels.end(), id) != channels.end();
}

int MultiStream::row_of(ChannelId id) const {
  auto it = std::find(channels.begin(), channels.end(), id);
  if (it == channels.end()) {
    throw std::invalid_argument("stream has no channel '" + channel_label(id) + "'");
  }
  return static_cast<int>(it - channels.begin());
}

MultiStream resample_align(const std::vector<SampleStream>& streams, Scalar grid_rate) {
  if (streams.empty()) throw std::invalid_argument("no streams to align");
  if (!(grid_rate > 0) || !std::isfinite(grid_rate)) {
    throw std::invalid_argument("grid_rate must be positive");
  }
  Scalar t_start = -std::numeric_limits<Scalar>::infinity();
  Scalar t_end = std::numeric_limits<Scalar>::infinity();
  for (const SampleStream& s : streams) {
    validate_stream(s);
    t_start = std::max(t_start, s.samples.front().t);
    t_end = std::min(t_end, s.samples.back().t);
  }
  for (std::size_t i = 0; i < streams.size(); ++i) {
    for (std::size_t j = i + 1; j < streams.size(); ++j) {
      if (streams[i].channel == streams[j].channel) {
        throw std::invalid_argument("duplicate channel '" +
                                    channel_label(streams[i].channel) + "'");
      }
    }
  }
  if (t_end < t_start - kTimeEps) {
    throw std::invalid_argument("streams share no overlapping time range");
  }

  const auto n = static_cast<Eigen::Index>(
      std::floor((t_end - t_start) * grid_rate + kTimeEps)) + 1;
  MultiStream out;
  out.t0 = t_start;
  out.grid_rate = grid_rate;
  out.values.resize(static_cast<Eigen::Index>(streams.size()), n);
  for (std::size_t r = 0; r < streams.size(); ++r) {
    out.channels.push_back(streams[r].channel);
    for (Eigen::Index i = 0; i < n; ++i) {
      out.values(static_cast<Eigen::Index>(r), i) =
          interp_at(streams[r].samples, out.time_at(i));
    }
  }
  return out;
}

MultiStream window(const MultiStream& ms, Scalar start, Scalar length) {
  if (!(length > 0) || !std::isfinite(length) || !std::isfinite(start)) {
    throw std::invalid_argument("window length must be positive");
  }
  const Eigen::Index n = ms.size();
  if (n == 0) throw std::invalid_argument("cannot window an empty stream");
  const Scalar dt = ms.dt();
  if (start < -kTimeEps || start + length > Scalar(n) * dt + kTimeEps) {
    throw std::out_of_range("window range outside the stream grid");
  }
  const auto i_begin =
      static_cast<Eigen::Index>(std::ceil(start * ms.grid_rate - kTimeEps));
  auto i_end = static_cast<Eigen::Index>(
      std::ceil((start + length) * ms.grid_rate - kTimeEps));
  i_end = std::min(i_end, n);
  if (i_end <= i_begin) throw std::invalid_argument("window contains no grid points");

  MultiStream out;
  out.t0 = ms.time_at(i_begin);
  out.grid_rate = ms.grid_rate;
  out.channels = ms.channels;
  out.values = ms.values.middleCols(i_begin, i_end - i_begin);
  return out;
}

}  // namespace pvgait
