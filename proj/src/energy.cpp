#include "pvgait/energy.hpp"

#include <stdexcept>

namespace pvgait {

namespace {

void require_non_negative(Scalar v, const char* name) {
  if (!(v >= 0)) throw std::invalid_argument(std::string(name) + " must be non-negative");
}

}  // namespace

PowerRange total_power(const PowerBudget& b, Scalar comm_mw) {
  require_non_negative(b.adc_mw, "adc_mw");
  require_non_negative(b.compute_min_mw, "compute_min_mw");
  require_non_negative(b.compute_max_mw, "compute_max_mw");
  require_non_negative(comm_mw, "comm_mw");
  if (b.compute_max_mw < b.compute_min_mw) {
    throw std::invalid_argument("compute_max_mw below compute_min_mw");
  }
  return PowerRange{b.adc_mw + b.compute_min_mw + comm_mw,
                    b.adc_mw + b.compute_max_mw + comm_mw};
}

Scalar duty_cycled(Scalar active_mw, Scalar sleep_mw, Scalar duty) {
  require_non_negative(active_mw, "active_mw");
  require_non_negative(sleep_mw, "sleep_mw");
  if (!(duty >= 0 && duty <= 1)) throw std::invalid_argument("duty outside [0, 1]");
  return active_mw * duty + sleep_mw * (1 - duty);
}

Scalar required_area_cm2(Scalar total_mw, const HarvestModel& h) {
  require_non_negative(total_mw, "total_mw");
  if (!(h.density_uw_cm2 > 0)) {
    throw std::invalid_argument("density_uw_cm2 must be positive");
  }
  if (!(h.derating > 0 && h.derating <= 1)) {
    throw std::invalid_argument("derating outside (0, 1]");
  }
  return total_mw * 1000 / (h.density_uw_cm2 * h.derating);
}

Scalar harvest_density_uw_cm2(Scalar light_uw_cm2, Scalar pce) {
  require_non_negative(light_uw_cm2, "light_uw_cm2");
  if (!(pce > 0 && pce <= 1)) throw std::invalid_argument("pce outside (0, 1]");
  return light_uw_cm2 * pce;
}

}  // namespace pvgait
