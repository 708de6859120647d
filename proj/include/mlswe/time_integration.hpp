#pragma once

#include <string>
#include <vector>

#include "mlswe/solver.hpp"

namespace mlswe {

/// out = a x + b y + c du on the conserved variables; the bottom is copied from x.
inline void combine(State& out, double a, const State& x, double b, const State& y, double c, const Rhs& du) {
  out.resize(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) {
    LayerState& o = out[p];
    o.b = x[p].b;
    for (int m = 0; m < kMaxLayers; ++m) {
      o.h[m] = a * x[p].h[m] + b * y[p].h[m] + c * du[p].h[m];
      o.hv[m] = a * x[p].hv[m] + b * y[p].hv[m] + c * du[p].hv[m];
      o.hw[m] = a * x[p].hw[m] + b * y[p].hw[m] + c * du[p].hw[m];
    }
  }
}

inline void combine(std::vector<double>& out, double a, const std::vector<double>& x, double b,
                    const std::vector<double>& y, double c, const std::vector<double>& du) {
  out.resize(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) out[p] = a * x[p] + b * y[p] + c * du[p];
}

/// Four-stage, third-order strong-stability-preserving Runge-Kutta step. Every
/// stage is a forward Euler step of size dt/2 followed by `post`.
template <class Vec, class Deriv, class RhsFn, class PostFn>
void ssprk43_step(Vec& u, double t, double dt, RhsFn&& rhs, PostFn&& post, Deriv& du) {
  const double h = 0.5 * dt;
  Vec u1, u2;
  rhs(u, t, du);
  combine(u1, 1.0, u, 0.0, u, h, du);
  post(u1);
  rhs(u1, t + h, du);
  combine(u2, 1.0, u1, 0.0, u1, h, du);
  post(u2);
  rhs(u2, t + dt, du);
  combine(u1, 2.0 / 3.0, u, 1.0 / 3.0, u2, h / 3.0, du);  // u3
  post(u1);
  rhs(u1, t + h, du);
  combine(u, 1.0, u1, 0.0, u1, h, du);
  post(u);
}

inline void ssprk43_step(Solver& solver, State& u, double t, double dt, Rhs& du) {
  ssprk43_step(
      u, t, dt, [&](const State& x, double s, Rhs& d) { solver.rhs(x, s, d); },
      [&](State& x) { solver.post_stage(x); }, du);
  for (const auto& node : u)
    if (!node.finite()) throw NumericalError("non-finite state after time step at t = " + std::to_string(t));
}

}  // namespace mlswe
