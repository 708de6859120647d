#pragma once

#include <algorithm>
#include <cmath>

#include "mlswe/fluxes.hpp"

namespace mlswe {

/// Interface entropy production [[w]]^T f* - <w o phi_eps>^T [[r_eps]] for
/// a face with unit normal n. Entropy variables come from the raw traces,
/// phi and r from the states the flux was evaluated on.
struct EntropyResidual {
  double value = 0.0;
  double scale = 0.0;  ///< sum of magnitudes of all summands
};

inline EntropyResidual entropy_residual(const LayerState& Lraw, const LayerState& Rraw, const LayerState& Lflux,
                                        const LayerState& Rflux, const LayerVars& fstar, const EquationSpec& spec,
                                        Normal n) {
  const LayerVars wL = entropy_variables(Lraw, spec);
  const LayerVars wR = entropy_variables(Rraw, spec);
  EntropyResidual r;
  for (int m = 0; m < spec.layers; ++m) {
    const double terms[3] = {(wR.h[m] - wL.h[m]) * fstar.h[m], (wR.hv[m] - wL.hv[m]) * fstar.hv[m],
                             (wR.hw[m] - wL.hw[m]) * fstar.hw[m]};
    const double jumpR = pressure_level(Rflux, spec, m) - pressure_level(Lflux, spec, m);
    const double gL = spec.gravity * Lflux.h[m];
    const double gR = spec.gravity * Rflux.h[m];
    const double wphi = 0.5 * (wL.hv[m] * gL + wR.hv[m] * gR) * n.x + 0.5 * (wL.hw[m] * gL + wR.hw[m] * gR) * n.y;
    const double nc = -wphi * jumpR;
    for (double t : terms) {
      r.value += t;
      r.scale += std::abs(t);
    }
    r.value += nc;
    r.scale += std::abs(0.5 * wL.hv[m] * gL * jumpR) + std::abs(0.5 * wR.hv[m] * gR * jumpR) +
               std::abs(0.5 * wL.hw[m] * gL * jumpR) + std::abs(0.5 * wR.hw[m] * gR * jumpR);
  }
  return r;
}

/// Residual of the reconstructed surface flux of the given kind.
inline EntropyResidual surface_entropy_residual(const LayerState& uL, const LayerState& uR, const EquationSpec& spec,
                                                SurfaceFlux kind, Normal n = {1.0, 0.0}) {
  const FluxResult f = es_flux({make_trace(uL, spec), make_trace(uR, spec), n}, spec, kind);
  return entropy_residual(uL, uR, f.rec.L.u, f.rec.R.u, f.fstar, spec, n);
}

/// Residual of the plain EC flux evaluated on the raw traces.
inline EntropyResidual raw_ec_entropy_residual(const LayerState& uL, const LayerState& uR, const EquationSpec& spec,
                                               Normal n = {1.0, 0.0}) {
  const LayerVars f = ec_flux(make_trace(uL, spec), make_trace(uR, spec), spec, n);
  return entropy_residual(uL, uR, uL, uR, f, spec, n);
}

}  // namespace mlswe
