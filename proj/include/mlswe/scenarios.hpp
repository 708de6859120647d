#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "mlswe/config.hpp"
#include "mlswe/dg1d.hpp"
#include "mlswe/dg2d.hpp"
#include "mlswe/fv1d.hpp"
#include "mlswe/sources.hpp"

namespace mlswe {

struct Gauge {
  std::string name;
  Point at;
};

/// Everything a run needs: the discretization, the initial state and the
/// optional references used by the diagnostics.
struct Setup {
  std::unique_ptr<Solver> solver;
  State initial;
  /// Lake-at-rest reference for the interface-height errors; empty uses `initial`.
  State reference;
  std::function<LayerState(Point, double)> exact;
  std::vector<Gauge> gauges;
};

struct Scenario {
  std::string name;
  std::string description;
  std::string defaults;  ///< config text applied before the user config
  std::function<Setup(const RunConfig&)> build;
};

/// Heights of a lake at rest with flat interfaces H (top first) over b.
inline LayerState lake_at_rest(const std::vector<double>& H, double b) {
  LayerState s;
  s.b = b;
  const int M = static_cast<int>(H.size());
  for (int m = 0; m < M; ++m) {
    const double below = m + 1 < M ? std::max(H[m + 1], b) : b;
    s.h[m] = std::max(0.0, H[m] - below);
  }
  return s;
}

namespace detail {

inline DGOptions dg_options(const RunConfig& rc) {
  DGOptions o;
  o.surface = rc.surface;
  o.shock_capturing = rc.shock_capturing;
  o.limit_momentum = rc.limit_momentum;
  return o;
}

inline std::unique_ptr<Solver> make_1d(const RunConfig& rc, const EquationSpec& spec, double a, double b,
                                       Boundary bc) {
  const std::string kind = rc.solver.empty() ? "dg1d" : rc.solver;
  if (kind == "dg1d") return std::make_unique<DG1D>(spec, rc.thresholds, rc.N, rc.elements, a, b, bc, dg_options(rc));
  if (kind == "fv1d") return std::make_unique<FV1D>(spec, rc.thresholds, Grid1D::uniform(rc.elements, a, b, bc));
  throw ConfigError("solver '" + kind + "' is not available for a 1D scenario");
}

inline std::unique_ptr<DG2D> make_2d(const RunConfig& rc, const EquationSpec& spec, double x0, double x1, double y0,
                                     double y1, bool periodic) {
  if (!rc.solver.empty() && rc.solver != "dg2d")
    throw ConfigError("solver '" + rc.solver + "' is not available for a 2D scenario");
  LGLOperators ops = build_lgl(rc.N);
  Mesh2D mesh = rc.mesh_file.empty()
                    ? structured_mesh(rc.elements, rc.elements_y > 0 ? rc.elements_y : rc.elements, x0, x1, y0, y1,
                                      rc.warp, periodic, ops)
                    : read_mesh_file(rc.mesh_file, ops);
  return std::make_unique<DG2D>(spec, rc.thresholds, std::move(ops), std::move(mesh), dg_options(rc));
}

inline State sample(const Solver& s, const std::function<LayerState(Point)>& f) {
  State u;
  for (const Point p : s.coordinates()) u.push_back(f(p));
  return u;
}

/// Sloped two-layer topography with a submerged sill, an island and a
/// shoreline, so that wet, partially dry and dry configurations all occur.
inline double wb2layer_bottom(double x) {
  if (x < 0.25) return 0.1 + 0.05 * std::cos(8.0 * std::numbers::pi * x);
  if (x < 0.4) return 0.8 - 0.6 * std::abs(x - 0.325) / 0.075;
  if (x < 0.6) return 0.35 + 0.15 * std::sin(10.0 * std::numbers::pi * x);
  if (x < 0.7) return 1.2;
  return 0.9 - 1.5 * (x - 0.7) + 0.05 * std::exp(-400.0 * (x - 0.95) * (x - 0.95));
}

inline double triangle_bottom(double x) {
  if (x <= 25.5 || x >= 31.5) return 0.0;
  return 0.4 * (1.0 - std::abs(x - 28.5) / 3.0);
}

inline Setup convergence3layer(const RunConfig& rc) {
  const auto spec = EquationSpec::make(2, 1.1, {0.9, 1.0, 1.1});
  Setup s;
  auto dg = make_2d(rc, spec, 0.0, 1.0, 0.0, 1.0, true);
  const ManufacturedSolution ms(spec);
  const std::vector<Point> xy = dg->coordinates();
  dg->source = [ms, xy](int node, const LayerState&, double t) { return ms.source(xy[node].x, xy[node].y, t); };
  s.initial = sample(*dg, [&](Point p) { return ms.state(p.x, p.y, 0.0); });
  s.exact = [ms](Point p, double t) { return ms.state(p.x, p.y, t); };
  s.solver = std::move(dg);
  return s;
}

inline Setup wb2layer(const RunConfig& rc) {
  const auto spec = EquationSpec::make(1, 1.0, {1.0, 3.0});
  Setup s;
  s.solver = make_1d(rc, spec, 0.0, 1.0, Boundary::wall);
  const std::vector<double> H = {1.0, 0.6};
  s.reference = sample(*s.solver, [&](Point p) { return lake_at_rest(H, wb2layer_bottom(p.x)); });
  s.initial = s.reference;
  if (rc.variant == "perturbed") {
    // zero-mean bump of the interface inside the left basin
    const double a = 0.05, x0 = 0.05, x1 = 0.2;
    const auto xs = s.solver->coordinates();
    const auto& w = s.solver->weights();
    std::vector<double> d(xs.size(), 0.0);
    double mean = 0.0, vol = 0.0;
    for (std::size_t p = 0; p < xs.size(); ++p)
      if (xs[p].x >= x0 && xs[p].x <= x1) {
        d[p] = a * std::sin(2.0 * std::numbers::pi * (xs[p].x - x0) / (x1 - x0));
        mean += w[p] * d[p];
        vol += w[p];
      }
    for (std::size_t p = 0; p < xs.size(); ++p)
      if (xs[p].x >= x0 && xs[p].x <= x1) {
        const double dp = d[p] - mean / vol;
        s.initial[p].h[1] += dp;
        s.initial[p].h[0] -= dp;
      }
  } else if (rc.variant != "steady") {
    throw ConfigError("wb2layer variant must be 'steady' or 'perturbed'");
  }
  return s;
}

inline Setup wb3layer_curvi(const RunConfig& rc) {
  const auto spec = EquationSpec::make(2, 9.81, {0.9, 1.0, 1.1});
  Setup s;
  auto dg = make_2d(rc, spec, 0.0, 1.0, 0.0, 1.0, true);
  const int nx = rc.elements;
  auto offset = [nx](int e) {
    const int ix = e % nx + 1, iy = e / nx + 1;
    if (ix == 3 && iy == 3) return 0.1;
    if (ix == 2 && iy == 3) return 0.5;
    if (ix == 2 && iy == 2) return 1.0;
    if (ix == 3 && iy == 2) return 1.5;
    return 0.0;
  };
  const auto xy = dg->coordinates();
  const int nn = dg->nodes_per_element();
  const std::vector<double> H = {1.5, 1.0, 0.5};
  for (std::size_t p = 0; p < xy.size(); ++p) {
    const double b0 = 0.2 + 0.1 * std::sin(2.0 * std::numbers::pi * xy[p].x) +
                      0.1 * std::cos(2.0 * std::numbers::pi * xy[p].y);
    s.initial.push_back(lake_at_rest(H, b0 + offset(static_cast<int>(p) / nn)));
  }
  s.solver = std::move(dg);
  return s;
}

inline Setup triangular_dam_break(const RunConfig& rc) {
  const auto spec = EquationSpec::make(1, 9.81, {1.0});
  Setup s;
  s.solver = make_1d(rc, spec, 0.0, 38.0, Boundary::wall);
  if (rc.manning > 0.0) {
    const double n = rc.manning;
    s.solver->source = [spec, n](int, const LayerState& u, double) { return manning_source(u, spec, n); };
  }
  s.initial = sample(*s.solver, [](Point p) {
    LayerState u;
    u.b = triangle_bottom(p.x);
    if (p.x < 15.5)
      u.h[0] = 0.75 - u.b;
    else if (p.x > 28.5)
      u.h[0] = std::max(0.0, 0.15 - u.b);
    return u;
  });
  s.gauges = {{"G4", {19.5, 0.0}}, {"G10", {25.5, 0.0}}, {"G13", {28.5, 0.0}}, {"G20", {35.5, 0.0}}};
  return s;
}

inline Setup ml_dam_break_2d(const RunConfig& rc) {
  const auto spec = EquationSpec::make(2, 9.81, {0.9, 0.95, 1.0});
  Setup s;
  s.solver = make_2d(rc, spec, -1.0, 1.0, -1.0, 1.0, false);
  double v = 0.8, w = 1.0;
  if (rc.variant == "at_rest")
    v = w = 0.0;
  else if (rc.variant != "moving")
    throw ConfigError("mlDamBreak2D variant must be 'moving' or 'at_rest'");
  s.initial = sample(*s.solver, [&](Point p) {
    const double b = 1.4 * std::exp(-10.0 * (p.x * p.x + p.y * p.y));
    LayerState u = p.x < 0.0 ? lake_at_rest({1.0, 0.8, 0.6}, b) : lake_at_rest({0.0, 0.0, 0.0}, b);
    for (int m = 0; m < 3; ++m) {
      u.hv[m] = u.h[m] * v;
      u.hw[m] = u.h[m] * w;
    }
    return u;
  });
  s.gauges = {{"center", {0.0, 0.0}}, {"downstream", {0.5, 0.0}}};
  return s;
}

}  // namespace detail

inline const std::vector<Scenario>& scenarios() {
  static const std::vector<Scenario> list = {
      {"convergence3layer", "manufactured three-layer solution on a warped periodic 4x4 mesh",
       "N = 6\nelements = 4\nwarp = 0.1\ndt = 1e-4\nt_end = 0.1\ndiagnostics_every = 100\n",
       detail::convergence3layer},
      {"wb2layer", "two-layer lake at rest over wet/dry topography (steady or perturbed)",
       "variant = steady\nN = 1\nelements = 100\ncfl = 0.7\nt_end = 1000\ndiagnostics_every = 1000\n",
       detail::wb2layer},
      {"wb3layerCurvi", "three-layer lake at rest with discontinuous bottom on a warped mesh",
       "N = 6\nelements = 4\nwarp = 0.1\ncfl = 1.0\nt_end = 200\ndiagnostics_every = 100\n", detail::wb3layer_curvi},
      {"triangularDamBreak", "dam break over a triangular obstacle with Manning friction and gauges",
       "N = 4\nelements = 128\ncfl = 0.7\nt_end = 40\nmanning = 0.0125\ngauge_interval = 0.1\n"
       "output_interval = 5\ndiagnostics_every = 10\n",
       detail::triangular_dam_break},
      {"mlDamBreak2D", "three-layer dam break over a dry Gaussian hump on a warped mesh",
       "variant = moving\nN = 4\nelements = 20\nwarp = 0.05\ncfl = 0.9\nt_end = 2\ntau_vel = 1e-6\n"
       "output_interval = 0.5\ndiagnostics_every = 10\n",
       detail::ml_dam_break_2d},
  };
  return list;
}

inline const Scenario& find_scenario(const std::string& name) {
  for (const auto& s : scenarios())
    if (s.name == name) return s;
  throw ConfigError("unknown scenario '" + name + "'");
}

/// Scenario defaults overridden by the user configuration.
inline RunConfig resolve_config(const Config& user) {
  const std::string name = user.get_string("scenario", "");
  if (name.empty()) throw ConfigError("missing key 'scenario'");
  Config c = Config::parse_string(find_scenario(name).defaults);
  c.merge(user);
  RunConfig rc = RunConfig::from(c);
  c.check_all_used();
  rc.validate();
  return rc;
}

inline Setup build_setup(const RunConfig& rc) { return find_scenario(rc.scenario).build(rc); }

}  // namespace mlswe
