#pragma once

#include <cmath>
#include <random>

#include "mlswe/equations.hpp"

namespace mlswe {

/// Reproducible random states for property checks: h log-uniform on
/// [1e-8, 10] with 20% exact zeros, velocities uniform on [-5, 5], bottom
/// uniform on [0, 2].
class StateSampler {
 public:
  explicit StateSampler(std::uint64_t seed) : rng_(seed) {}

  double height() {
    if (unit_(rng_) < 0.2) return 0.0;
    return std::pow(10.0, -8.0 + 9.0 * unit_(rng_));
  }
  double wet_height() { return std::pow(10.0, -3.0 + 4.0 * unit_(rng_)); }
  double speed() { return -5.0 + 10.0 * unit_(rng_); }
  double bottom() { return 2.0 * unit_(rng_); }
  double uniform(double a, double b) { return a + (b - a) * unit_(rng_); }
  std::mt19937_64& engine() { return rng_; }

  /// State with heights drawn by `height()` (wet/dry/partially dry mixes).
  LayerState state(const EquationSpec& spec) { return fill(spec, [this] { return height(); }); }
  /// Strictly wet state, heights in [1e-3, 10].
  LayerState wet_state(const EquationSpec& spec) { return fill(spec, [this] { return wet_height(); }); }

 private:
  template <class H>
  LayerState fill(const EquationSpec& spec, H&& draw) {
    LayerState u;
    u.b = bottom();
    for (int m = 0; m < spec.layers; ++m) {
      u.h[m] = draw();
      u.hv[m] = u.h[m] * speed();
      if (spec.dim == 2) u.hw[m] = u.h[m] * speed();
    }
    return u;
  }

  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

/// Random increasing densities in (0.5, 1.5).
inline EquationSpec random_spec(StateSampler& s, int layers, int dim, double gravity) {
  std::vector<double> rho(layers);
  double r = s.uniform(0.5, 0.8);
  for (int m = 0; m < layers; ++m) {
    rho[m] = r;
    r += s.uniform(0.05, 0.2);
  }
  return EquationSpec::make(dim, gravity, rho);
}

}  // namespace mlswe
