#pragma once

#include <cmath>

#include "error.hpp"

namespace srk {

// Uniform time grid t_0 < t_1 < ... < t_N = t_end with N steps of size h.
struct TimeGrid {
  double t0 = 0.0;
  double t_end = 1.0;
  long steps = 1;

  double step() const { return (t_end - t0) / static_cast<double>(steps); }
  double node(long n) const { return n == 0 ? t0 : t0 + static_cast<double>(n) * step(); }

  void validate() const {
    require(steps >= 1, "time grid needs at least one step");
    require(std::isfinite(t0) && std::isfinite(t_end), "time grid bounds must be finite");
    require(step() > 0.0, "time grid step must be positive (t_end > t0)");
  }

  // Degenerate zero-step grids are tolerated where only stored data is
  // manipulated (a trajectory that is just x0, a path with no rows).
  void validate_allow_empty() const {
    if (steps == 0) {
      require(std::isfinite(t0) && std::isfinite(t_end), "time grid bounds must be finite");
      return;
    }
    validate();
  }

  bool operator==(const TimeGrid&) const = default;
};

}  // namespace srk
