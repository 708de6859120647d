#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "mlswe/fv_solver.hpp"
#include "mlswe/lgl.hpp"
#include "mlswe/solver.hpp"
#include "mlswe/stabilization.hpp"

namespace mlswe {

struct DGOptions {
  SurfaceFlux surface = SurfaceFlux::entropy_stable;
  bool shock_capturing = true;
  bool limit_momentum = true;
  /// Fixed blending coefficient for every element; negative selects the indicator.
  double fixed_alpha = -1.0;
};

/// Split-form DGSEM on a uniform 1D mesh with subcell FV blending.
class DG1D : public Solver {
 public:
  DG1D(EquationSpec spec, Thresholds th, int N, int K, double a, double b, Boundary bc, DGOptions opt = {})
      : Solver(spec, th), ops_(build_lgl(N)), indicator_(ops_), K_(K), x0_(a), opt_(opt), bc_(bc) {
    if (K < 1 || (bc == Boundary::periodic && K < 2)) throw ConfigError("too few elements");
    if (!(b > a)) throw ConfigError("mesh interval must have positive length");
    dx_ = (b - a) / K;
    J_ = 0.5 * dx_;
    weights_.resize(num_nodes());
    for (int e = 0; e < K; ++e)
      for (int i = 0; i < n(); ++i) weights_[e * n() + i] = J_ * ops_.w[i];
    alpha_.assign(K, 0.0);
  }

  [[nodiscard]] int n() const { return ops_.n(); }
  [[nodiscard]] const LGLOperators& ops() const { return ops_; }
  [[nodiscard]] double jacobian() const { return J_; }
  [[nodiscard]] Boundary boundary() const { return bc_; }
  [[nodiscard]] DGOptions& options() { return opt_; }

  [[nodiscard]] int num_nodes() const override { return K_ * n(); }
  [[nodiscard]] int num_elements() const override { return K_; }
  [[nodiscard]] int nodes_per_element() const override { return n(); }
  [[nodiscard]] const std::vector<double>& weights() const override { return weights_; }
  [[nodiscard]] const std::vector<double>& alpha() const override { return alpha_; }

  [[nodiscard]] std::vector<Point> coordinates() const override {
    std::vector<Point> p(num_nodes());
    for (int e = 0; e < K_; ++e)
      for (int i = 0; i < n(); ++i) p[e * n() + i] = {x0_ + e * dx_ + J_ * (ops_.xi[i] + 1.0), 0.0};
    return p;
  }

  void rhs(const State& u, double t, Rhs& du) override {
    const int n = this->n();
    const int N = ops_.N;
    du.assign(u.size(), LayerVars{});
    traces_.resize(u.size());
    for (std::size_t p = 0; p < u.size(); ++p) traces_[p] = make_trace(u[p], spec_);

    // outward face contributions for every element: [2e] left, [2e + 1] right
    face_out_.resize(2 * K_);
    for (int e = 0; e + 1 < K_; ++e) {
      const FluxResult f = es_flux({traces_[e * n + N], traces_[(e + 1) * n], {1.0, 0.0}}, spec_, opt_.surface);
      face_out_[2 * e + 1] = f.outward_left();
      face_out_[2 * (e + 1)] = f.outward_right();
    }
    const LayerState& first = u.front();
    const LayerState& last = u.back();
    if (bc_ == Boundary::periodic) {
      const FluxResult f = es_flux({traces_.back(), traces_.front(), {1.0, 0.0}}, spec_, opt_.surface);
      face_out_[2 * K_ - 1] = f.outward_left();
      face_out_[0] = f.outward_right();
    } else {
      const FluxResult fl = es_flux({make_trace(wall_boundary(first, {-1.0, 0.0}), spec_), traces_.front(), {1.0, 0.0}},
                                    spec_, opt_.surface);
      const FluxResult fr = es_flux({traces_.back(), make_trace(wall_boundary(last, {1.0, 0.0}), spec_), {1.0, 0.0}},
                                    spec_, opt_.surface);
      face_out_[0] = fl.outward_right();
      face_out_[2 * K_ - 1] = fr.outward_left();
    }

    compute_alpha(u);

    for (int e = 0; e < K_; ++e) {
      const double a = alpha_[e];
      if (a < 1.0) dg_element(e, du);
      if (a > 0.0) {
        for (int i = 0; i < n; ++i) {
          const LayerVars fv = fv_node(u, e, i);
          LayerVars& d = du[e * n + i];
          d = blend(d, fv, a);
        }
      }
    }
    add_sources(u, t, du);
    check_finite(du, n);
  }

  /// Subcell FV update of one element, using the element-face buffer from the
  /// last call to rhs for its two outer faces.
  [[nodiscard]] LayerVars fv_node(const State& u, int e, int i) const {
    const int n = this->n();
    const int N = ops_.N;
    const int p = e * n + i;
    const LayerVars left = i == 0 ? face_out_[2 * e] : fv_face(u[p - 1], u[p], spec_).outward_right();
    const LayerVars right = i == N ? face_out_[2 * e + 1] : fv_face(u[p], u[p + 1], spec_).outward_left();
    return fv_cell_update(left, right, J_ * ops_.w[i]);
  }

  [[nodiscard]] double max_dt(const State& u, double cfl) const override {
    const int n = this->n();
    double dt = std::numeric_limits<double>::infinity();
    for (int e = 0; e < K_; ++e) {
      double speed = 0.0, cel = 0.0;
      auto add = [&](const LayerState& s) {
        const NodeTrace tr = make_trace(s, spec_);
        double H = 0.0, Q = 0.0;
        for (int m = 0; m < spec_.layers; ++m) {
          const double h = wet_height(s.h[m]);
          H += h;
          Q += h * tr.v[m];
          if (h > 0.0) speed = std::max(speed, std::abs(tr.v[m]));
        }
        if (H > 0.0) speed = std::max(speed, std::abs(Q / H));
        cel = std::max(cel, std::sqrt(spec_.gravity * H));
      };
      for (int i = 0; i < n; ++i) add(u[e * n + i]);
      if (e > 0 || bc_ == Boundary::periodic) add(u[((e + K_ - 1) % K_) * n + n - 1]);
      if (e + 1 < K_ || bc_ == Boundary::periodic) add(u[((e + 1) % K_) * n]);
      const double lam = speed + cel;
      if (lam > 0.0) dt = std::min(dt, cfl * J_ * ops_.w[0] / (2.0 * lam));
    }
    return dt;
  }

  void post_stage(State& u) const override {
    const int n = this->n();
    for (int e = 0; e < K_; ++e)
      positivity_limit(std::span<LayerState>(u.data() + e * n, n),
                       std::span<const double>(weights_.data() + e * n, n), spec_.layers, opt_.limit_momentum);
    floor_and_desingularize(u);
  }

 private:
  void compute_alpha(const State& u) {
    const int n = this->n();
    if (opt_.fixed_alpha >= 0.0) {
      alpha_.assign(K_, opt_.fixed_alpha);
      return;
    }
    if (!opt_.shock_capturing) {
      alpha_.assign(K_, 0.0);
      return;
    }
    std::vector<double> raw(K_);
    std::vector<char> dry(K_);
    std::vector<std::vector<int>> nb(K_);
    std::vector<double> q(n);
    for (int e = 0; e < K_; ++e) {
      const std::span<const LayerState> nodes(u.data() + e * n, n);
      for (int i = 0; i < n; ++i) q[i] = indicator_quantity(nodes[i], spec_);
      raw[e] = indicator_.alpha(q, 1);
      dry[e] = partially_dry(nodes, spec_.layers, thresholds_.tau_wet);
      if (e > 0 || bc_ == Boundary::periodic) nb[e].push_back((e + K_ - 1) % K_);
      if (e + 1 < K_ || bc_ == Boundary::periodic) nb[e].push_back((e + 1) % K_);
    }
    alpha_ = finalize_alpha(raw, nb, dry, thresholds_.alpha_max);
  }

  void dg_element(int e, Rhs& du) const {
    const int n = this->n();
    const int N = ops_.N;
    const NodeTrace* tr = traces_.data() + e * n;
    const Normal nx{1.0, 0.0};
    const int M = spec_.layers;
    LayerArray R[32];
    for (int i = 0; i < n; ++i)
      for (int m = 0; m < M; ++m) R[i][m] = pressure_level(tr[i].u, spec_, m);
    // rows of D sum to zero, so sum_l D_il f_il = sum_l D_il (f_il - F_i)
    LayerVars vol[32], F[32];
    for (int i = 0; i < n; ++i) F[i] = physical_flux(tr[i], spec_, nx);
    for (int i = 0; i < n; ++i) {
      for (int l = i + 1; l < n; ++l) {
        const LayerVars f = ec_flux(tr[i], tr[l], spec_, nx);
        vol[i].add_scaled(f - F[i], 2.0 * ops_.d(i, l));
        vol[l].add_scaled(f - F[l], 2.0 * ops_.d(l, i));
      }
    }
    for (int i = 0; i < n; ++i)
      for (int m = 0; m < M; ++m) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += ops_.d(i, l) * (R[l][m] - R[i][m]);
        vol[i].hv[m] += spec_.gravity * tr[i].u.h[m] * s;
      }
    // surface terms: (1 / omega) (G_out - F(u) . n)
    LayerVars sl = face_out_[2 * e];
    sl.add_scaled(physical_flux(tr[0], spec_, nx), 1.0);
    vol[0].add_scaled(sl, 1.0 / ops_.w[0]);
    LayerVars sr = face_out_[2 * e + 1];
    sr.add_scaled(physical_flux(tr[N], spec_, nx), -1.0);
    vol[N].add_scaled(sr, 1.0 / ops_.w[N]);
    for (int i = 0; i < n; ++i) du[e * n + i] = (-1.0 / J_) * vol[i];
  }

  LGLOperators ops_;
  ShockIndicator indicator_;
  int K_;
  double x0_, dx_ = 0.0, J_ = 0.0;
  DGOptions opt_;
  Boundary bc_;
  std::vector<double> weights_;
  std::vector<double> alpha_;
  std::vector<NodeTrace> traces_;
  std::vector<LayerVars> face_out_;
};

}  // namespace mlswe
