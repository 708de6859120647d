#pragma once

#include <algorithm>
#include <utility>

#include "mlswe/equations.hpp"

namespace mlswe {

/// Traces on the two sides of a face. `n` points from L to R.
struct InterfacePair {
  NodeTrace L;
  NodeTrace R;
  Normal n{};
};

struct ReconstructedPair {
  NodeTrace L;
  NodeTrace R;
};

/// Heights at or below the dry floor enter the reconstruction as exact zeros.
inline double wet_height(double h) { return h > kDryFloor ? h : 0.0; }

inline double surface_height(const LayerState& u, int layers) {
  double H = u.b;
  for (int m = layers - 1; m >= 0; --m) H += wet_height(u.h[m]);
  return H;
}

/// Interface bottom values (b_eps^L, b_eps^R).
inline std::pair<double, double> reconstruct_bottom(const LayerState& uL, const LayerState& uR, int layers) {
  const double bmax = std::max(uL.b, uR.b);
  return {std::min(surface_height(uL, layers), bmax), std::min(surface_height(uR, layers), bmax)};
}

/// Reconstructs one side for a given interface bottom value. Velocities of the
/// raw trace are carried over unchanged.
inline NodeTrace reconstruct_side(const NodeTrace& t, double b_eps, int layers) {
  NodeTrace r = t;
  r.u.b = b_eps;
  double H = t.u.b;
  double H_below = b_eps;  // H_{m+1,eps}
  for (int m = layers - 1; m >= 0; --m) {
    H += wet_height(t.u.h[m]);
    const double H_eps = std::max(H, b_eps);
    const double h = H_eps - H_below;
    r.u.h[m] = h;
    r.u.hv[m] = h * t.v[m];
    r.u.hw[m] = h * t.w[m];
    H_below = H_eps;
  }
  return r;
}

inline ReconstructedPair reconstruct_state(const InterfacePair& p, int layers) {
  const auto [bL, bR] = reconstruct_bottom(p.L.u, p.R.u, layers);
  return {reconstruct_side(p.L, bL, layers), reconstruct_side(p.R, bR, layers)};
}

}  // namespace mlswe
