#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mlswe/dg1d.hpp"
#include "mlswe/dg2d.hpp"
#include "mlswe/entropy_residual.hpp"
#include "mlswe/fv1d.hpp"
#include "mlswe/random_states.hpp"
#include "mlswe/scenarios.hpp"

namespace mlswe {

/// Outcome of one property check: passes when value <= limit.
struct CheckResult {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  [[nodiscard]] bool passed() const { return value <= limit; }
};

namespace checks {

/// Largest relative entropy production of the ES surface flux and largest
/// relative residual of the EC flux (SWE with reconstruction, multilayer
/// without reconstruction) over random wet/dry states.
inline std::vector<CheckResult> flux_suite(long long trials, std::uint64_t seed) {
  StateSampler s(seed);
  double es = -1.0, ec_swe = 0.0, ec_raw = 0.0, consistency = 0.0;
  for (long long k = 0; k < trials; ++k) {
    const int M = 1 + static_cast<int>(k % 3);
    const int dim = 1 + static_cast<int>((k / 3) % 2);
    const auto spec = random_spec(s, M, dim, s.uniform(0.5, 10.0));
    const LayerState L = s.state(spec), R = s.state(spec);
    Normal n{1.0, 0.0};
    if (dim == 2) {
      const double a = s.uniform(0.0, 2.0 * std::numbers::pi);
      n = {std::cos(a), std::sin(a)};
    }
    const auto r = surface_entropy_residual(L, R, spec, SurfaceFlux::entropy_stable, n);
    es = std::max(es, r.value / std::max(r.scale, 1.0));
    if (M == 1) {
      const auto e = surface_entropy_residual(L, R, spec, SurfaceFlux::entropy_conservative, n);
      ec_swe = std::max(ec_swe, std::abs(e.value) / std::max(e.scale, 1.0));
    }
    const auto raw = raw_ec_entropy_residual(L, R, spec, n);
    ec_raw = std::max(ec_raw, std::abs(raw.value) / std::max(raw.scale, 1.0));
    const NodeTrace t = make_trace(L, spec);
    const LayerVars f = ec_flux(t, t, spec, n);
    const LayerVars F = physical_flux(t, spec, n);
    for (int m = 0; m < M; ++m)
      consistency = std::max({consistency, std::abs(f.h[m] - F.h[m]), std::abs(f.hv[m] - F.hv[m]),
                              std::abs(f.hw[m] - F.hw[m])});
  }
  return {{"ES flux entropy production (relative, max)", es, 1e-13},
          {"EC flux with reconstruction, SWE (relative |residual|)", ec_swe, 1e-13},
          {"EC flux without reconstruction, multilayer (relative |residual|)", ec_raw, 1e-13},
          {"EC flux consistency |f(u,u) - F(u)|", consistency, 1e-12}};
}

inline double max_abs(const Rhs& du, int layers) {
  double r = 0.0;
  for (const auto& d : du)
    for (int m = 0; m < layers; ++m) r = std::max({r, std::abs(d.h[m]), std::abs(d.hv[m]), std::abs(d.hw[m])});
  return r;
}

/// Right-hand side of wet/dry lakes at rest for the FV, 1D DG and curvilinear
/// 2D DG discretizations, and of a constant state on a warped mesh.
inline std::vector<CheckResult> wb_suite() {
  std::vector<CheckResult> out;
  const std::vector<double> H = {1.0, 0.6};
  {
    const auto spec = EquationSpec::make(1, 1.0, {1.0, 3.0});
    FV1D fv(spec, {}, Grid1D::uniform(200, 0.0, 1.0, Boundary::wall));
    State u;
    for (const Point p : fv.coordinates()) u.push_back(lake_at_rest(H, detail::wb2layer_bottom(p.x)));
    Rhs du;
    fv.rhs(u, 0.0, du);
    out.push_back({"FV lake at rest, two layers, wet/dry", max_abs(du, 2), 1e-12});
    DG1D dg(spec, {}, 3, 60, 0.0, 1.0, Boundary::wall);
    u.clear();
    for (const Point p : dg.coordinates()) u.push_back(lake_at_rest(H, detail::wb2layer_bottom(p.x)));
    dg.rhs(u, 0.0, du);
    out.push_back({"DG1D lake at rest, two layers, wet/dry", max_abs(du, 2), 1e-12});
  }
  {
    const auto spec = EquationSpec::make(2, 9.81, {0.9, 1.0, 1.1});
    RunConfig rc;
    rc.scenario = "wb3layerCurvi";
    rc.N = 6;
    rc.elements = 4;
    rc.warp = 0.1;
    Setup s = detail::wb3layer_curvi(rc);
    Rhs du;
    s.solver->rhs(s.initial, 0.0, du);
    out.push_back({"DG2D lake at rest, three layers, discontinuous bottom", max_abs(du, 3), 1e-12});
    const auto ops = build_lgl(6);
    DG2D dg(spec, {}, ops, structured_mesh(4, 4, 0.0, 1.0, 0.0, 1.0, 0.1, true, ops));
    LayerState c;
    c.h = {0.5, 0.7, 0.9};
    c.hv = {0.4, -0.2, 0.1};
    c.hw = {-0.3, 0.5, 0.2};
    c.b = 0.25;
    dg.rhs(State(dg.num_nodes(), c), 0.0, du);
    out.push_back({"DG2D free stream on warped mesh", max_abs(du, 3), 1e-12});
    double metric = 0.0;
    for (const auto& g : dg.mesh().geometry) metric = std::max(metric, metric_identity_residual(g, ops));
    out.push_back({"metric identities on warped mesh", metric, 1e-12});
  }
  return out;
}

/// Semi-discrete entropy balance of DG with EC and ES surface fluxes on a
/// warped periodic mesh, plus the interface ES production.
inline std::vector<CheckResult> entropy_suite(long long trials, std::uint64_t seed) {
  std::vector<CheckResult> out;
  const auto spec = EquationSpec::make(2, 1.1, {0.9, 1.0, 1.1});
  const auto ops = build_lgl(4);
  for (SurfaceFlux kind : {SurfaceFlux::entropy_conservative, SurfaceFlux::entropy_stable}) {
    DGOptions opt;
    opt.surface = kind;
    opt.fixed_alpha = 0.0;
    DG2D dg(spec, {}, ops, structured_mesh(3, 3, 0.0, 1.0, 0.0, 1.0, 0.1, true, ops), opt);
    State u;
    const auto xy = dg.coordinates();
    for (std::size_t p = 0; p < xy.size(); ++p) {
      const double x = xy[p].x, y = xy[p].y;
      LayerState n;
      n.b = 0.1 * std::sin(2 * std::numbers::pi * x) * std::cos(2 * std::numbers::pi * y);
      for (int m = 0; m < 3; ++m) {
        n.h[m] = 0.5 + 0.1 * (m + 1) * std::cos(2 * std::numbers::pi * (x + 0.3 * m)) + 0.05 * ((p / 25) % 2);
        n.hv[m] = n.h[m] * (0.3 + 0.2 * std::sin(2 * std::numbers::pi * y));
        n.hw[m] = n.h[m] * (-0.2 + 0.1 * std::cos(2 * std::numbers::pi * x));
      }
      u.push_back(n);
    }
    Rhs du;
    dg.rhs(u, 0.0, du);
    double rate = 0.0, scale = 0.0;
    for (std::size_t p = 0; p < u.size(); ++p) {
      const LayerVars w = entropy_variables(u[p], spec);
      const double t = w.dot(du[p], 3);
      rate += dg.weights()[p] * t;
      scale += dg.weights()[p] * std::abs(t);
    }
    if (kind == SurfaceFlux::entropy_conservative)
      out.push_back({"DG2D entropy rate with EC surface flux (relative |rate|)", std::abs(rate) / scale, 1e-12});
    else
      out.push_back({"DG2D entropy rate with ES surface flux (relative)", rate / scale, 0.0});
  }
  auto f = flux_suite(trials, seed);
  out.push_back(f.front());
  return out;
}

/// Forward-Euler positivity of the FV scheme at its CFL-limited step on
/// random non-negative multilayer fields.
inline std::vector<CheckResult> positivity_suite(long long fields, std::uint64_t seed) {
  StateSampler s(seed);
  double worst = 0.0;
  for (long long k = 0; k < fields; ++k) {
    const int M = 1 + static_cast<int>(k % 3);
    const auto spec = random_spec(s, M, 1, s.uniform(0.5, 10.0));
    const Grid1D g = Grid1D::uniform(16, 0.0, 1.0, k % 2 ? Boundary::wall : Boundary::periodic);
    State u(16);
    for (auto& c : u) c = s.state(spec);
    const double dt = max_stable_dt_fv(u, spec, g, 1.0);
    const RhsField du = rhs_fv(u, spec, g);
    for (int i = 0; i < 16; ++i)
      for (int m = 0; m < M; ++m) worst = std::max(worst, -(u[i].h[m] + dt * du[i].h[m]));
  }
  return {{"FV forward Euler: largest negative height", worst, 0.0}};
}

}  // namespace checks

inline std::vector<CheckResult> run_check_suite(const std::string& suite, std::uint64_t seed = 1) {
  if (suite == "flux") return checks::flux_suite(200000, seed);
  if (suite == "wb") return checks::wb_suite();
  if (suite == "entropy") return checks::entropy_suite(200000, seed);
  if (suite == "positivity") return checks::positivity_suite(10000, seed);
  throw ConfigError("unknown check suite '" + suite + "' (flux, wb, entropy, positivity)");
}

}  // namespace mlswe
