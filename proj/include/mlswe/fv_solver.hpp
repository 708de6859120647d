#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "mlswe/fluxes.hpp"

namespace mlswe {

enum class Boundary { periodic, wall };

struct Grid1D {
  std::vector<double> widths;
  double x0 = 0.0;
  Boundary boundary = Boundary::periodic;

  static Grid1D uniform(int K, double a, double b, Boundary bc) {
    if (K < 2) throw ConfigError("a 1D grid needs at least 2 cells");
    if (!(b > a)) throw ConfigError("grid interval must have positive length");
    return {std::vector<double>(K, (b - a) / K), a, bc};
  }

  static Grid1D from_widths(std::vector<double> w, double x0, Boundary bc) {
    if (w.size() < 2) throw ConfigError("a 1D grid needs at least 2 cells");
    for (double d : w)
      if (!(d > 0.0)) throw ConfigError("cell widths must be positive");
    return {std::move(w), x0, bc};
  }

  [[nodiscard]] int size() const { return static_cast<int>(widths.size()); }

  [[nodiscard]] std::vector<double> centers() const {
    std::vector<double> c(widths.size());
    double x = x0;
    for (std::size_t i = 0; i < widths.size(); ++i) {
      c[i] = x + 0.5 * widths[i];
      x += widths[i];
    }
    return c;
  }
};

using FieldFV = std::vector<LayerState>;
using RhsField = std::vector<LayerVars>;

/// Mirror state for a wall with unit outward normal n: heights and bottom are
/// copied, the normal momentum component is reversed.
inline LayerState wall_boundary(const LayerState& u, Normal n) {
  LayerState g = u;
  for (int m = 0; m < kMaxLayers; ++m) {
    const double qn = u.hv[m] * n.x + u.hw[m] * n.y;
    g.hv[m] = u.hv[m] - 2.0 * qn * n.x;
    g.hw[m] = u.hw[m] - 2.0 * qn * n.y;
  }
  return g;
}

/// Cell update from the outward face contributions on its two sides.
inline LayerVars fv_cell_update(const LayerVars& out_left, const LayerVars& out_right, double width) {
  LayerVars du = out_left + out_right;
  du *= -1.0 / width;
  return du;
}

/// Face flux between two cells for the 1D scheme; n = +1 points from L to R.
inline FluxResult fv_face(const LayerState& uL, const LayerState& uR, const EquationSpec& spec) {
  return es_flux({make_trace(uL, spec), make_trace(uR, spec), Normal{1.0, 0.0}}, spec);
}

/// Outward contributions of the two boundary faces for the leftmost and
/// rightmost cell.
struct BoundaryFaces {
  LayerVars left_out;   // enters cell 0 through its left face
  LayerVars right_out;  // enters cell K-1 through its right face
};

inline BoundaryFaces fv_boundary_faces(const FieldFV& u, const EquationSpec& spec, Boundary bc) {
  const LayerState& first = u.front();
  const LayerState& last = u.back();
  if (bc == Boundary::periodic) {
    const FluxResult f = fv_face(last, first, spec);
    return {f.outward_right(), f.outward_left()};
  }
  const FluxResult fl = fv_face(wall_boundary(first, Normal{-1.0, 0.0}), first, spec);
  const FluxResult fr = fv_face(last, wall_boundary(last, Normal{1.0, 0.0}), spec);
  return {fl.outward_right(), fr.outward_left()};
}

/// First-order path-conservative scheme with hydrostatic reconstruction.
inline RhsField rhs_fv(const FieldFV& u, const EquationSpec& spec, const Grid1D& grid) {
  const int K = grid.size();
  if (static_cast<int>(u.size()) != K) throw ConfigError("field size does not match grid");
  std::vector<FluxResult> faces;
  faces.reserve(K - 1);
  for (int i = 0; i + 1 < K; ++i) faces.push_back(fv_face(u[i], u[i + 1], spec));
  const BoundaryFaces bf = fv_boundary_faces(u, spec, grid.boundary);

  RhsField du(K);
  for (int i = 0; i < K; ++i) {
    const LayerVars left = i == 0 ? bf.left_out : faces[i - 1].outward_right();
    const LayerVars right = i == K - 1 ? bf.right_out : faces[i].outward_left();
    du[i] = fv_cell_update(left, right, grid.widths[i]);
    if (!du[i].finite()) throw NumericalError("non-finite FV right-hand side in cell " + std::to_string(i));
  }
  return du;
}

/// Largest time step allowed by the positivity condition dt <= dx / (2 lambda),
/// scaled by cfl. Returns dt_cap if no wave moves.
inline double max_stable_dt_fv(const FieldFV& u, const EquationSpec& spec, const Grid1D& grid, double cfl,
                               double dt_cap = std::numeric_limits<double>::infinity()) {
  const int K = grid.size();
  double dt = dt_cap;
  auto face = [&](int l, int r, const LayerState& a, const LayerState& b) {
    const double lam = lambda_max(make_trace(a, spec), make_trace(b, spec), spec, Normal{1.0, 0.0});
    if (lam > 0.0) dt = std::min(dt, cfl * std::min(grid.widths[l], grid.widths[r]) / (2.0 * lam));
  };
  for (int i = 0; i + 1 < K; ++i) face(i, i + 1, u[i], u[i + 1]);
  if (grid.boundary == Boundary::periodic) {
    face(K - 1, 0, u[K - 1], u[0]);
  } else {
    face(0, 0, wall_boundary(u[0], Normal{-1.0, 0.0}), u[0]);
    face(K - 1, K - 1, u[K - 1], wall_boundary(u[K - 1], Normal{1.0, 0.0}));
  }
  return dt;
}

}  // namespace mlswe
