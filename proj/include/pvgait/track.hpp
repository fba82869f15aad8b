#pragma once

#include "pvgait/types.hpp"

namespace pvgait {

// Piecewise-linear position record t -> (x, y), clamped at both ends.
struct PositionTrack {
  ArrayX t;     // strictly increasing, seconds
  Matrix2X xy;  // column i is the position at t[i], meters

  Vec2 position_at(Scalar time) const;
};

}  // namespace pvgait
