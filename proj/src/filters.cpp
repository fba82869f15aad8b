#include "pvgait/filters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pvgait {

bool DerivStream::has_channel(ChannelId id) const {
  return std::find(channels.begin(), channels.end(), id) != channels.end();
}

int DerivStream::row_of(ChannelId id) const {
  auto it = std::find(channels.begin(), channels.end(), id);
  if (it == channels.end()) {
    throw std::invalid_argument("stream has no channel '" + channel_label(id) + "'");
  }
  return static_cast<int>(it - channels.begin());
}

MultiStream low_pass(const MultiStream& ms, Scalar alpha) {
  if (!(alpha >= 0 && alpha <= 1)) {
    throw std::invalid_argument("low-pass alpha must lie in [0, 1]");
  }
  MultiStream out = ms;
  for (Eigen::Index i = 1; i < out.size(); ++i) {
    out.values.col(i) = alpha * out.values.col(i - 1) + (1 - alpha) * out.values.col(i);
  }
  return out;
}

DerivStream derivative(const MultiStream& ms) {
  if (ms.size() < 2) {
    throw std::invalid_argument("derivative needs at least two grid points");
  }
  DerivStream out;
  out.t0 = ms.t0 + ms.dt();
  out.grid_rate = ms.grid_rate;
  out.channels = ms.channels;
  const Eigen::Index n = ms.size() - 1;
  out.values = (ms.values.rightCols(n) - ms.values.leftCols(n)) * ms.grid_rate;
  return out;
}

}  // namespace pvgait
