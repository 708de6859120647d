#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

#include "mlswe/desingularize.hpp"
#include "mlswe/types.hpp"

namespace mlswe {

/// Parameters of the (multilayer) shallow water system. Layers are counted
/// from the top (lightest) to the bottom (densest); M = 1 is the plain SWE.
struct EquationSpec {
  int layers = 1;
  double gravity = 9.81;
  LayerArray rho{1.0, 1.0, 1.0, 1.0};
  int dim = 1;

  static EquationSpec make(int dim, double gravity, std::initializer_list<double> densities) {
    return make(dim, gravity, std::vector<double>(densities));
  }

  static EquationSpec make(int dim, double gravity, const std::vector<double>& densities) {
    EquationSpec s;
    s.dim = dim;
    s.gravity = gravity;
    s.layers = static_cast<int>(densities.size());
    if (densities.size() > s.rho.size()) s.validate();
    std::copy(densities.begin(), densities.end(), s.rho.begin());
    s.validate();
    return s;
  }

  void validate() const {
    if (layers < 1 || layers > kMaxLayers)
      throw ConfigError("layer count must lie in [1, " + std::to_string(kMaxLayers) + "]");
    if (dim != 1 && dim != 2) throw ConfigError("dimension must be 1 or 2");
    if (!(gravity >= 0.0)) throw ConfigError("gravity must be non-negative");
    if (!(rho[0] > 0.0)) throw ConfigError("densities must be positive");
    for (int m = 1; m < layers; ++m)
      if (!(rho[m] > rho[m - 1])) throw ConfigError("densities must increase strictly from top to bottom");
  }

  /// Density ratio rho_k / rho_m.
  [[nodiscard]] double sigma(int k, int m) const { return rho[k] / rho[m]; }
};

/// H_m = b + sum_{k >= m} h_k
inline double total_layer_height(const LayerState& u, int layers, int m) {
  double H = u.b;
  for (int k = layers - 1; k >= m; --k) H += u.h[k];
  return H;
}

/// Hydrostatic pressure level of layer m, the non-trivial entry of r_m:
/// b + sum_{k >= m} h_k + sum_{k < m} sigma_km h_k.
inline double pressure_level(const LayerState& u, const EquationSpec& spec, int m) {
  double r = total_layer_height(u, spec.layers, m);
  for (int k = 0; k < m; ++k) r += spec.sigma(k, m) * u.h[k];
  return r;
}

/// Conserved state together with its recovered velocities. Reconstructed
/// interface states keep the velocities of the raw trace they came from.
struct NodeTrace {
  LayerState u;
  LayerArray v{};
  LayerArray w{};
};

inline NodeTrace make_trace(const LayerState& u, const EquationSpec& spec) {
  NodeTrace t{u, {}, {}};
  for (int m = 0; m < spec.layers; ++m) {
    t.v[m] = velocity(u.h[m], u.hv[m]);
    t.w[m] = velocity(u.h[m], u.hw[m]);
  }
  return t;
}

/// Advective flux projected on direction n (no pressure; it lives in the
/// nonconservative term). n need not be normalized.
inline LayerVars physical_flux(const NodeTrace& t, const EquationSpec& spec, Normal n) {
  LayerVars f;
  for (int m = 0; m < spec.layers; ++m) {
    const double mass = t.u.hv[m] * n.x + t.u.hw[m] * n.y;
    f.h[m] = mass;
    f.hv[m] = mass * t.v[m];
    f.hw[m] = mass * t.w[m];
  }
  return f;
}

inline LayerVars physical_flux(const LayerState& u, const EquationSpec& spec, Axis dir) {
  return physical_flux(make_trace(u, spec), spec, axis_normal(dir));
}

struct NonconservativeFactors {
  LayerVars phi;
  LayerVars r;
};

/// phi_m = g (0, h_m, h_m) and r_m with the pressure level in the momentum
/// slot of direction `dir`.
inline NonconservativeFactors nonconservative_factors(const LayerState& u, const EquationSpec& spec, Axis dir) {
  NonconservativeFactors nc;
  for (int m = 0; m < spec.layers; ++m) {
    const double gh = spec.gravity * u.h[m];
    const double level = pressure_level(u, spec, m);
    if (dir == Axis::x) {
      nc.phi.hv[m] = gh;
      nc.r.hv[m] = level;
    } else {
      nc.phi.hw[m] = gh;
      nc.r.hw[m] = level;
    }
  }
  return nc;
}

/// Total energy of all layers.
inline double entropy(const LayerState& u, const EquationSpec& spec) {
  const double g = spec.gravity;
  double S = 0.0;
  for (int m = 0; m < spec.layers; ++m) {
    const double h = u.h[m];
    const double v = velocity(h, u.hv[m]);
    const double w = velocity(h, u.hw[m]);
    double coupling = 0.0;
    for (int k = 0; k < m; ++k) coupling += spec.sigma(k, m) * u.h[k];
    S += spec.rho[m] * (0.5 * h * (v * v + w * w) + 0.5 * g * h * h + g * h * u.b + g * coupling * h);
  }
  return S;
}

inline double entropy_flux(const LayerState& u, const EquationSpec& spec, Axis dir) {
  const double g = spec.gravity;
  double F = 0.0;
  for (int m = 0; m < spec.layers; ++m) {
    const double h = u.h[m];
    const double v = velocity(h, u.hv[m]);
    const double w = velocity(h, u.hw[m]);
    const double un = dir == Axis::x ? v : w;
    double below = 0.0;
    for (int k = m; k < spec.layers; ++k) below += u.h[k];
    double coupling = 0.0;
    for (int k = 0; k < m; ++k) coupling += spec.sigma(k, m) * u.h[k];
    F += spec.rho[m] * un * (0.5 * h * (v * v + w * w) + g * h * u.b + g * below * h + g * coupling * h);
  }
  return F;
}

/// w = dS/du
inline LayerVars entropy_variables(const LayerState& u, const EquationSpec& spec) {
  LayerVars w;
  for (int m = 0; m < spec.layers; ++m) {
    const double v = velocity(u.h[m], u.hv[m]);
    const double vy = velocity(u.h[m], u.hw[m]);
    w.h[m] = spec.rho[m] * (spec.gravity * pressure_level(u, spec, m) - 0.5 * (v * v + vy * vy));
    w.hv[m] = spec.rho[m] * v;
    w.hw[m] = spec.rho[m] * vy;
  }
  return w;
}

}  // namespace mlswe
