#pragma once

#include <string>
#include <vector>

#include "pvgait/errors.hpp"
#include "pvgait/types.hpp"

namespace pvgait {

enum class Foot { Left, Right };

enum class Placement { TopCenter, OuterSide };

Foot opposite(Foot f);
std::string foot_label(Foot f);                 // "L" / "R"
Foot foot_from_label(const std::string& label);

// One photovoltaic cell on one shoe.
struct ChannelId {
  Foot foot = Foot::Left;
  Placement placement = Placement::TopCenter;

  friend bool operator==(const ChannelId&, const ChannelId&) = default;
};

// Channels keep one fixed order everywhere: lt, ls, rt, rs.
inline constexpr int kChannelCount = 4;
int channel_index(ChannelId id);
ChannelId channel_at(int index);
std::string channel_label(ChannelId id);
ChannelId channel_from_label(const std::string& label);
const std::vector<ChannelId>& all_channels();

// One voltage reading.
struct Sample {
  Scalar t = 0;  // seconds
  Scalar v = 0;  // volts
};

// Raw readings from one cell; timestamps strictly increasing.
struct SampleStream {
  ChannelId channel;
  std::vector<Sample> samples;
  Scalar nominal_rate = 28.0;  // Hz
};

// Voltage channels on one shared uniform grid. Row r holds channels[r]'s
// values; column i is the multi-channel reading at time_at(i).
struct MultiStream {
  Scalar t0 = 0;          // first grid timestamp, seconds
  Scalar grid_rate = 28;  // Hz
  std::vector<ChannelId> channels;
  MatrixX values;  // channels.size() x size()

  Eigen::Index size() const { return values.cols(); }
  Scalar dt() const { return Scalar(1) / grid_rate; }
  Scalar time_at(Eigen::Index i) const { return t0 + Scalar(i) / grid_rate; }
  ArrayX times() const;
  bool has_channel(ChannelId id) const;
  int row_of(ChannelId id) const;  // throws std::invalid_argument if absent
};

// Linear interpolation of every stream onto one uniform grid at grid_rate.
// The grid starts at the latest stream start and stops at the earliest stream
// end; nothing is extrapolated.
MultiStream resample_align(const std::vector<SampleStream>& streams, Scalar grid_rate);

// Half-open slice covering [start, start + length), where start is an offset
// in seconds from the first grid timestamp.
MultiStream window(const MultiStream& ms, Scalar start, Scalar length);

}  // namespace pvgait
