#pragma once

#include "pvgait/types.hpp"

namespace pvgait {

// Average node draw in milliwatts, compute bounded by a best and worst case.
struct PowerBudget {
  Scalar adc_mw = 0.42;
  Scalar compute_min_mw = 1.44;
  Scalar compute_max_mw = 1.77;
  Scalar comm_active_mw = 10.5;
  Scalar comm_sleep_mw = 0.05;
  Scalar duty = 5.0 / 3600.0;  // active share of the reporting period
};

// Measured average for hourly-burst reporting; an override, never derived
// from comm_active and duty.
inline constexpr Scalar kIntermittentCommMw = 0.7;

struct PowerRange {
  Scalar min_mw = 0;
  Scalar max_mw = 0;
};

// adc + compute + the chosen communication average.
PowerRange total_power(const PowerBudget& b, Scalar comm_mw);

// active * duty + sleep * (1 - duty).
Scalar duty_cycled(Scalar active_mw, Scalar sleep_mw, Scalar duty);

struct HarvestModel {
  Scalar density_uw_cm2 = 60.0;  // panel output under the target lighting
  Scalar pce = 0.19;             // efficiency the density was measured at
  Scalar derating = 1.0;         // usable share of rated output, in (0, 1]
};

// Panel area in cm^2 that sustains total_mw continuously.
Scalar required_area_cm2(Scalar total_mw, const HarvestModel& h);

// Output density for a light level and cell efficiency, both in the
// panel plane: light_uw_cm2 * pce.
Scalar harvest_density_uw_cm2(Scalar light_uw_cm2, Scalar pce);

}  // namespace pvgait
