#pragma once

#include "pvgait/signal.hpp"

namespace pvgait {

// Exponential low-pass: y[0] = x[0], y[i] = alpha*y[i-1] + (1-alpha)*x[i].
struct FilterParams {
  Scalar alpha = 0.9;  // in [0, 1]; 0 passes the input through
};

// Backward-difference slope of an aligned stream: one column shorter than its
// input, first timestamp shifted by one grid step.
struct DerivStream {
  Scalar t0 = 0;
  Scalar grid_rate = 28;
  std::vector<ChannelId> channels;
  MatrixX values;  // volts per second

  Eigen::Index size() const { return values.cols(); }
  Scalar dt() const { return Scalar(1) / grid_rate; }
  Scalar time_at(Eigen::Index i) const { return t0 + Scalar(i) / grid_rate; }
  bool has_channel(ChannelId id) const;
  int row_of(ChannelId id) const;
};

MultiStream low_pass(const MultiStream& ms, Scalar alpha);
DerivStream derivative(const MultiStream& ms);

}  // namespace pvgait
