#pragma once

#include <algorithm>
#include <cmath>

#include "mlswe/equations.hpp"
#include "mlswe/reconstruction.hpp"

namespace mlswe {

/// Two-point entropy-conservative flux projected on n (n may carry a metric
/// scaling). Valid on raw traces (volume) and reconstructed traces (surface).
inline LayerVars ec_flux(const NodeTrace& L, const NodeTrace& R, const EquationSpec& spec, Normal n) {
  LayerVars f;
  for (int m = 0; m < spec.layers; ++m) {
    const double mass = 0.5 * ((L.u.hv[m] + R.u.hv[m]) * n.x + (L.u.hw[m] + R.u.hw[m]) * n.y);
    f.h[m] = mass;
    f.hv[m] = mass * 0.5 * (L.v[m] + R.v[m]);
    f.hw[m] = mass * 0.5 * (L.w[m] + R.w[m]);
  }
  return f;
}

/// scale * g h_m^self * [[R_m]] in the momentum slots, projected on n, with
/// [[R]] = R(uR) - R(uL). scale = 1/2 gives the interface term
/// (phi^self / 2) o [[r]]; the volume kernel uses scale = 1.
inline LayerVars nonconservative_jump(const LayerState& self, const LayerState& uL, const LayerState& uR,
                                      const EquationSpec& spec, Normal n, double scale = 0.5) {
  LayerVars d;
  for (int m = 0; m < spec.layers; ++m) {
    const double jump = pressure_level(uR, spec, m) - pressure_level(uL, spec, m);
    const double c = scale * spec.gravity * self.h[m] * jump;
    d.hv[m] = c * n.x;
    d.hw[m] = c * n.y;
  }
  return d;
}

/// Wave-speed estimate: largest absolute mean or layer velocity (normal
/// component) plus the largest external gravity-wave speed.
inline double lambda_max(const NodeTrace& L, const NodeTrace& R, const EquationSpec& spec, Normal n_unit) {
  double speed = 0.0;
  double celerity = 0.0;
  for (const NodeTrace* t : {&L, &R}) {
    double H = 0.0;
    double Q = 0.0;
    for (int m = 0; m < spec.layers; ++m) {
      const double h = wet_height(t->u.h[m]);
      const double vn = t->v[m] * n_unit.x + t->w[m] * n_unit.y;
      H += h;
      Q += h * vn;
      if (h > 0.0) speed = std::max(speed, std::abs(vn));
    }
    if (spec.layers > 1 && H > 0.0) speed = std::max(speed, std::abs(Q / H));
    celerity = std::max(celerity, std::sqrt(spec.gravity * H));
  }
  return speed + celerity;
}

enum class SurfaceFlux { entropy_stable, entropy_conservative };

/// Face coupling terms. For a face with normal n pointing from L to R the
/// outward contributions entering the two cells are
///   L: fstar + diamondL,   R: -fstar + diamondR.
struct FluxResult {
  LayerVars fstar;
  LayerVars diamondL;
  LayerVars diamondR;
  double lambda = 0.0;
  ReconstructedPair rec;

  [[nodiscard]] LayerVars outward_left() const { return fstar + diamondL; }
  [[nodiscard]] LayerVars outward_right() const { return diamondR - fstar; }
};

/// Entropy-stable flux with hydrostatic reconstruction. `n` may be scaled by
/// a surface Jacobian; the dissipation is scaled by |n| accordingly.
inline FluxResult es_flux(const InterfacePair& p, const EquationSpec& spec,
                          SurfaceFlux kind = SurfaceFlux::entropy_stable) {
  FluxResult r;
  r.rec = reconstruct_state(p, spec.layers);
  const NodeTrace& Le = r.rec.L;
  const NodeTrace& Re = r.rec.R;
  r.fstar = ec_flux(Le, Re, spec, p.n);
  if (kind == SurfaceFlux::entropy_stable) {
    const double s = p.n.norm();
    r.lambda = lambda_max(p.L, p.R, spec, p.n.scaled(1.0 / s));
    const double c = 0.5 * r.lambda * s;
    for (int m = 0; m < spec.layers; ++m) {
      r.fstar.h[m] -= c * (Re.u.h[m] - Le.u.h[m]);
      r.fstar.hv[m] -= c * (Re.u.hv[m] - Le.u.hv[m]);
      r.fstar.hw[m] -= c * (Re.u.hw[m] - Le.u.hw[m]);
    }
  }
  r.diamondL = nonconservative_jump(Le.u, Le.u, Re.u, spec, p.n);
  r.diamondR = nonconservative_jump(Re.u, Le.u, Re.u, spec, p.n);
  if (!r.fstar.finite() || !r.diamondL.finite() || !r.diamondR.finite())
    throw NumericalError("non-finite interface flux");
  return r;
}

}  // namespace mlswe
