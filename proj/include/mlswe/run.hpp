#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "mlswe/diagnostics.hpp"
#include "mlswe/scenarios.hpp"
#include "mlswe/time_integration.hpp"

#ifndef MLSWE_VERSION
#define MLSWE_VERSION "unknown"
#endif

namespace mlswe {

struct GaugeSeries {
  Gauge gauge;
  int node = 0;
  std::vector<double> t;
  std::vector<double> depth;
  std::vector<double> discharge;
};

struct RunResult {
  std::string scenario;
  int steps = 0;
  double t_final = 0.0;
  double wall_seconds = 0.0;
  /// Largest per-step total entropy change relative to |S|.
  double max_entropy_increase = -std::numeric_limits<double>::infinity();
  double entropy_initial = 0.0, entropy_final = 0.0;
  LakeAtRestError lake_final;
  std::vector<double> lake_max_over_run;
  std::vector<double> lake_mean_over_run;  ///< largest |signed mean| lake-at-rest error
  std::vector<double> max_mass_drift;  ///< max relative change of every layer's mass
  double min_height = std::numeric_limits<double>::infinity();
  double max_alpha = 0.0;
  std::vector<double> l2_error;
  std::vector<GaugeSeries> gauges;
};

namespace detail {

inline nlohmann::json to_json(const RunResult& r) {
  nlohmann::json j;
  j["steps"] = r.steps;
  j["t_final"] = r.t_final;
  j["wall_seconds"] = r.wall_seconds;
  j["max_entropy_increase_rel"] = r.max_entropy_increase;
  j["entropy_initial"] = r.entropy_initial;
  j["entropy_final"] = r.entropy_final;
  j["lake_at_rest_mean_final"] = r.lake_final.mean;
  j["lake_at_rest_max_final"] = r.lake_final.max;
  j["lake_at_rest_max_over_run"] = r.lake_max_over_run;
  j["lake_at_rest_mean_over_run"] = r.lake_mean_over_run;
  j["max_mass_drift_rel"] = r.max_mass_drift;
  j["min_height"] = r.min_height;
  j["max_alpha"] = r.max_alpha;
  if (!r.l2_error.empty()) j["l2_error"] = r.l2_error;
  return j;
}

inline std::string snapshot_name(int index) {
  std::ostringstream s;
  s << "snapshot_" << std::setw(4) << std::setfill('0') << index << ".csv";
  return s.str();
}

}  // namespace detail

/// Integrates one scenario to t_end. With `write` set, snapshots,
/// diagnostics.csv, gauges.csv and manifest.json go to rc.output_dir.
inline RunResult run_scenario(const RunConfig& rc, bool write = true, std::ostream* log = nullptr) {
  namespace fs = std::filesystem;
  const auto start = std::chrono::steady_clock::now();
  Setup setup = build_setup(rc);
  Solver& solver = *setup.solver;
  const int M = solver.spec().layers;
  State u = setup.initial;
  const State& ref = setup.reference.empty() ? setup.initial : setup.reference;
  for (auto& node : u) desingularize_node(node, M, rc.thresholds.tau_vel);

  RunResult r;
  r.scenario = rc.scenario;
  const auto xy = solver.coordinates();
  for (const auto& g : setup.gauges) r.gauges.push_back({g, nearest_node(xy, g.at), {}, {}, {}});

  const fs::path dir(rc.output_dir);
  std::ofstream diag;
  int snapshot_index = 0;
  auto snapshot = [&](const State& x, const std::string& name) {
    std::ofstream f(dir / name);
    write_snapshot(f, solver, x);
  };
  if (write) {
    fs::create_directories(dir);
    diag.open(dir / "diagnostics.csv");
    diag << "step,t,dt,entropy,entropy_change";
    for (int m = 1; m <= M; ++m) diag << ",lake_mean_" << m << ",lake_max_" << m << ",mass_" << m;
    diag << ",min_h,max_alpha\n";
    diag.precision(17);
  }

  const std::vector<double> mass0 = layer_mass(solver, u);
  r.max_mass_drift.assign(M, 0.0);
  r.lake_max_over_run.assign(M, 0.0);
  r.lake_mean_over_run.assign(M, 0.0);
  double S = total_entropy(solver, u);
  r.entropy_initial = S;

  auto sample_gauges = [&](double t) {
    for (auto& g : r.gauges) {
      g.t.push_back(t);
      g.depth.push_back(water_depth(u[g.node], M));
      double q = 0.0;
      for (int m = 0; m < M; ++m) q += u[g.node].hv[m];
      g.discharge.push_back(q);
    }
  };

  auto record = [&](int step, double t, double dt, double dS) {
    const LakeAtRestError lake = lake_at_rest_error(solver, u, ref);
    const auto mass = layer_mass(solver, u);
    double amax = 0.0;
    for (double a : solver.alpha()) amax = std::max(amax, a);
    r.max_alpha = std::max(r.max_alpha, amax);
    for (int m = 0; m < M; ++m) {
      r.lake_max_over_run[m] = std::max(r.lake_max_over_run[m], lake.max[m]);
      r.lake_mean_over_run[m] = std::max(r.lake_mean_over_run[m], std::abs(lake.mean[m]));
      if (mass0[m] > 0.0) r.max_mass_drift[m] = std::max(r.max_mass_drift[m], std::abs(mass[m] - mass0[m]) / mass0[m]);
    }
    r.lake_final = lake;
    if (write && (step % rc.diagnostics_every == 0 || t >= rc.t_end)) {
      diag << step << ',' << t << ',' << dt << ',' << S << ',' << dS;
      for (int m = 0; m < M; ++m) diag << ',' << lake.mean[m] << ',' << lake.max[m] << ',' << mass[m];
      diag << ',' << min_height(u, M) << ',' << amax << '\n';
    }
  };

  Rhs du;
  double t = 0.0;
  int step = 0;
  const bool fixed = rc.dt > 0.0;
  const long long fixed_steps = fixed ? std::max(1LL, std::llround(std::ceil(rc.t_end / rc.dt - 1e-9))) : 0;
  const double fixed_dt = fixed ? rc.t_end / fixed_steps : 0.0;
  const double gauge_dt = rc.gauge_interval;
  double next_gauge = 0.0;
  double next_output = rc.output_interval > 0.0 ? rc.output_interval : rc.t_end;
  if (!r.gauges.empty()) {
    sample_gauges(0.0);
    next_gauge = gauge_dt;
  }
  if (write) snapshot(u, detail::snapshot_name(snapshot_index++));
  record(0, 0.0, 0.0, 0.0);
  solver.reset_min_height();
  const State* last_good = &u;
  State previous;
  try {
    while (fixed ? step < fixed_steps : t < rc.t_end * (1.0 - 1e-14)) {
      double dt = fixed ? fixed_dt : solver.max_dt(u, rc.cfl);
      if (!fixed) {
        if (!(dt > 0.0) || !std::isfinite(dt))
          throw NumericalError("invalid time step " + std::to_string(dt) + " at t = " + std::to_string(t));
        double stop = rc.t_end;
        if (!r.gauges.empty()) stop = std::min(stop, next_gauge);
        stop = std::min(stop, next_output);
        if (t + dt > stop * (1.0 - 1e-14)) dt = stop - t;
      }
      previous = u;
      last_good = &previous;
      ssprk43_step(solver, u, t, dt, du);
      last_good = &u;
      ++step;
      t = fixed ? rc.t_end * static_cast<double>(step) / fixed_steps : t + dt;
      if (!fixed && std::abs(t - rc.t_end) <= 1e-12 * rc.t_end) t = rc.t_end;
      const double S_new = total_entropy(solver, u);
      const double dS = S_new - S;
      if (S != 0.0) r.max_entropy_increase = std::max(r.max_entropy_increase, dS / std::abs(S));
      S = S_new;
      record(step, t, dt, dS);
      if (!r.gauges.empty() && t >= next_gauge * (1.0 - 1e-12)) {
        sample_gauges(t);
        next_gauge += gauge_dt;
      }
      if (t >= next_output * (1.0 - 1e-12)) {
        if (write && t < rc.t_end) snapshot(u, detail::snapshot_name(snapshot_index++));
        next_output += rc.output_interval > 0.0 ? rc.output_interval : rc.t_end;
      }
      if (log && step % 10000 == 0) *log << "  step " << step << "  t = " << t << std::endl;
    }
  } catch (const Error&) {
    if (write) snapshot(*last_good, "snapshot_last_good.csv");
    throw;
  }
  r.steps = step;
  r.t_final = t;
  r.entropy_final = S;
  r.min_height = solver.min_height();
  if (setup.exact) {
    State exact;
    for (const Point p : xy) exact.push_back(setup.exact(p, t));
    r.l2_error = l2_height_error(solver, u, exact);
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (write) {
    snapshot(u, detail::snapshot_name(snapshot_index++));
    if (!r.gauges.empty()) {
      std::ofstream g(dir / "gauges.csv");
      g.precision(17);
      g << "t";
      for (const auto& s : r.gauges) g << ',' << s.gauge.name << "_depth," << s.gauge.name << "_discharge";
      g << '\n';
      for (std::size_t k = 0; k < r.gauges.front().t.size(); ++k) {
        g << r.gauges.front().t[k];
        for (const auto& s : r.gauges) g << ',' << s.depth[k] << ',' << s.discharge[k];
        g << '\n';
      }
    }
    nlohmann::json m;
    m["version"] = MLSWE_VERSION;
    m["scenario"] = rc.scenario;
    m["seed"] = rc.seed;
    m["config"] = rc.source.values();
    m["results"] = detail::to_json(r);
    for (const auto& s : r.gauges) m["gauges"][s.gauge.name] = {s.gauge.at.x, s.gauge.at.y};
    std::ofstream(dir / "manifest.json") << m.dump(2) << '\n';
  }
  return r;
}

/// Runs the scenario once per polynomial degree N in [lo, hi], each into
/// output_dir/N_<n>, and writes output_dir/sweep.csv.
inline std::vector<std::pair<int, RunResult>> run_sweep(RunConfig rc, int lo, int hi, bool write = true,
                                                        std::ostream* log = nullptr) {
  namespace fs = std::filesystem;
  if (lo > hi) throw ConfigError("empty parameter range");
  const fs::path base(rc.output_dir);
  std::vector<std::pair<int, RunResult>> out;
  for (int N = lo; N <= hi; ++N) {
    rc.N = N;
    rc.source.set("N", std::to_string(N));
    rc.output_dir = (base / ("N_" + std::to_string(N))).string();
    rc.validate();
    if (log) *log << "N = " << N << '\n';
    out.emplace_back(N, run_scenario(rc, write, log));
  }
  if (write) {
    fs::create_directories(base);
    std::ofstream f(base / "sweep.csv");
    f.precision(17);
    f << "N,steps,wall_seconds";
    const std::size_t M = out.front().second.l2_error.size();
    for (std::size_t m = 1; m <= M; ++m) f << ",l2_h" << m;
    f << '\n';
    for (const auto& [N, r] : out) {
      f << N << ',' << r.steps << ',' << r.wall_seconds;
      for (double e : r.l2_error) f << ',' << e;
      f << '\n';
    }
  }
  return out;
}

}  // namespace mlswe
