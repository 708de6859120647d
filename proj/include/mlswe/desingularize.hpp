#pragma once

#include <algorithm>
#include <limits>

#include "mlswe/types.hpp"

namespace mlswe {

/// Water height assigned to dry nodes. Nodes at or below this value are dry.
inline constexpr double kDryFloor = 5.0 * std::numeric_limits<double>::epsilon();

struct Thresholds {
  double tau_wet = 1e-4;  ///< element is treated as partially dry below this layer height [m]
  double tau_vel = 1e-8;  ///< momentum desingularization threshold [m^2]
  double alpha_max = 0.5;
  double dry_floor = kDryFloor;

  void validate() const {
    if (!(tau_wet > 0.0) || !(tau_vel > 0.0) || !(dry_floor > 0.0))
      throw ConfigError("thresholds must be positive");
    if (!(alpha_max > 0.0 && alpha_max <= 1.0)) throw ConfigError("alpha_max must lie in (0, 1]");
  }
};

/// Velocity recovered from conserved variables. Dry nodes have zero velocity;
/// momenta are assumed to have passed through `desingularize_node` so that the
/// quotient is bounded near the dry floor.
inline double velocity(double h, double hu) { return h > kDryFloor ? hu / h : 0.0; }

/// Regularized momentum: exact for h^2 >= tau_vel, damped below, zero when dry.
inline double desingularized_momentum(double h, double hu, double tau_vel) {
  if (!(h > kDryFloor)) return 0.0;
  const double h2 = h * h;
  return 2.0 * h2 * hu / (h2 + std::max(h2, tau_vel));
}

/// Water-height floor followed by momentum desingularization for every layer.
inline void desingularize_node(LayerState& u, int layers, double tau_vel) {
  for (int m = 0; m < layers; ++m) {
    u.h[m] = std::max(u.h[m], kDryFloor);
    u.hv[m] = desingularized_momentum(u.h[m], u.hv[m], tau_vel);
    u.hw[m] = desingularized_momentum(u.h[m], u.hw[m], tau_vel);
  }
}

}  // namespace mlswe
