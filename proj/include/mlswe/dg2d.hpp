#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "mlswe/dg1d.hpp"
#include "mlswe/mesh2d.hpp"

namespace mlswe {

/// Split-form DGSEM on curvilinear quadrilaterals with subcell FV blending.
class DG2D : public Solver {
 public:
  DG2D(EquationSpec spec, Thresholds th, LGLOperators ops, Mesh2D mesh, DGOptions opt = {})
      : Solver(spec, th), ops_(std::move(ops)), indicator_(ops_), mesh_(std::move(mesh)), opt_(opt) {
    if (spec_.dim != 2) throw ConfigError("DG2D needs a two-dimensional equation spec");
    const int n = ops_.n(), nn = n * n, N = ops_.N, K = mesh_.size();
    weights_.resize(K * nn);
    sub_xi_.resize(K);
    sub_eta_.resize(K);
    dt_factor_.resize(K * nn);
    for (int e = 0; e < K; ++e) {
      const ElementGeometry& g = mesh_.geometry[e];
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) weights_[e * nn + g.idx(i, j)] = g.J[g.idx(i, j)] * ops_.w[i] * ops_.w[j];
      // subcell interface normals: running sums of omega_k (D Ja)_k from the element face
      sub_xi_[e].resize(n * N);
      sub_eta_[e].resize(n * N);
      for (int j = 0; j < n; ++j) {
        Normal c{g.Ja1x[g.idx(0, j)], g.Ja1y[g.idx(0, j)]};
        for (int k = 0; k < N; ++k) {
          double dx = 0.0, dy = 0.0;
          for (int l = 0; l < n; ++l) {
            dx += ops_.d(k, l) * g.Ja1x[g.idx(l, j)];
            dy += ops_.d(k, l) * g.Ja1y[g.idx(l, j)];
          }
          c = {c.x + ops_.w[k] * dx, c.y + ops_.w[k] * dy};
          sub_xi_[e][j * N + k] = c;
        }
      }
      for (int i = 0; i < n; ++i) {
        Normal c{g.Ja2x[g.idx(i, 0)], g.Ja2y[g.idx(i, 0)]};
        for (int k = 0; k < N; ++k) {
          double dx = 0.0, dy = 0.0;
          for (int l = 0; l < n; ++l) {
            dx += ops_.d(k, l) * g.Ja2x[g.idx(i, l)];
            dy += ops_.d(k, l) * g.Ja2y[g.idx(i, l)];
          }
          c = {c.x + ops_.w[k] * dx, c.y + ops_.w[k] * dy};
          sub_eta_[e][i * N + k] = c;
        }
      }
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const double lx = i == 0 ? g.normal[0][j].norm() : sub_xi_[e][j * N + i - 1].norm();
          const double rx = i == N ? g.normal[1][j].norm() : sub_xi_[e][j * N + i].norm();
          const double ly = j == 0 ? g.normal[2][i].norm() : sub_eta_[e][i * N + j - 1].norm();
          const double ry = j == N ? g.normal[3][i].norm() : sub_eta_[e][i * N + j].norm();
          dt_factor_[e * nn + g.idx(i, j)] = g.J[g.idx(i, j)] / ((lx + rx) / ops_.w[i] + (ly + ry) / ops_.w[j]);
        }
    }
    alpha_.assign(K, 0.0);
  }

  [[nodiscard]] const LGLOperators& ops() const { return ops_; }
  [[nodiscard]] const Mesh2D& mesh() const { return mesh_; }
  [[nodiscard]] DGOptions& options() { return opt_; }
  [[nodiscard]] int n() const { return ops_.n(); }

  [[nodiscard]] int num_nodes() const override { return mesh_.size() * n() * n(); }
  [[nodiscard]] int num_elements() const override { return mesh_.size(); }
  [[nodiscard]] int nodes_per_element() const override { return n() * n(); }
  [[nodiscard]] const std::vector<double>& weights() const override { return weights_; }
  [[nodiscard]] const std::vector<double>& alpha() const override { return alpha_; }

  [[nodiscard]] std::vector<Point> coordinates() const override {
    std::vector<Point> p;
    p.reserve(num_nodes());
    for (const auto& g : mesh_.geometry)
      for (std::size_t q = 0; q < g.x.size(); ++q) p.push_back({g.x[q], g.y[q]});
    return p;
  }

  void rhs(const State& u, double t, Rhs& du) override {
    const int nn = n() * n();
    const int K = mesh_.size();
    du.assign(u.size(), LayerVars{});
    traces_.resize(u.size());
    for (std::size_t p = 0; p < u.size(); ++p) traces_[p] = make_trace(u[p], spec_);
    compute_face_fluxes();
    compute_alpha(u);
    for (int e = 0; e < K; ++e) {
      const double a = alpha_[e];
      if (a < 1.0) dg_element(e, du);
      if (a > 0.0) {
        fv_element(e, fv_buffer_);
        for (int p = 0; p < nn; ++p) du[e * nn + p] = blend(du[e * nn + p], fv_buffer_[p], a);
      }
    }
    add_sources(u, t, du);
    check_finite(du, nn);
  }

  [[nodiscard]] double max_dt(const State& u, double cfl) const override {
    const int nn = n() * n();
    const int K = mesh_.size();
    std::vector<double> speed(K, 0.0), cel(K, 0.0);
    for (int e = 0; e < K; ++e)
      for (int p = 0; p < nn; ++p) {
        const LayerState& s = u[e * nn + p];
        double H = 0.0, Qx = 0.0, Qy = 0.0;
        for (int m = 0; m < spec_.layers; ++m) {
          const double h = wet_height(s.h[m]);
          if (h <= 0.0) continue;
          const double vx = s.hv[m] / h, vy = s.hw[m] / h;
          H += h;
          Qx += h * vx;
          Qy += h * vy;
          speed[e] = std::max(speed[e], std::hypot(vx, vy));
        }
        if (H > 0.0) speed[e] = std::max(speed[e], std::hypot(Qx, Qy) / H);
        cel[e] = std::max(cel[e], std::sqrt(spec_.gravity * H));
      }
    double dt = std::numeric_limits<double>::infinity();
    for (int e = 0; e < K; ++e) {
      double s = speed[e], c = cel[e];
      for (const FaceLink& l : mesh_.links[e])
        if (l.element >= 0) {
          s = std::max(s, speed[l.element]);
          c = std::max(c, cel[l.element]);
        }
      const double lam = s + c;
      if (lam <= 0.0) continue;
      for (int p = 0; p < nn; ++p) dt = std::min(dt, cfl * dt_factor_[e * nn + p] / lam);
    }
    return dt;
  }

  void post_stage(State& u) const override {
    const int nn = n() * n();
    for (int e = 0; e < mesh_.size(); ++e)
      positivity_limit(std::span<LayerState>(u.data() + e * nn, nn),
                       std::span<const double>(weights_.data() + e * nn, nn), spec_.layers, opt_.limit_momentum);
    floor_and_desingularize(u);
  }

 private:
  [[nodiscard]] int face_index(int e, int f, int k) const { return ((e * kFaces + f) * n()) + k; }

  void compute_face_fluxes() {
    const int n = this->n(), nn = n * n, N = ops_.N;
    face_out_.resize(mesh_.size() * kFaces * n);
    for (int e = 0; e < mesh_.size(); ++e) {
      const ElementGeometry& g = mesh_.geometry[e];
      for (int f = 0; f < kFaces; ++f) {
        const FaceLink& l = mesh_.links[e][f];
        if (l.element >= 0 && (l.element < e || (l.element == e && l.face < f))) continue;
        for (int k = 0; k < n; ++k) {
          const NodeTrace& self = traces_[e * nn + g.face_node(f, k)];
          const Normal nv = g.normal[f][k];
          if (l.element < 0) {
            const NodeTrace ghost = make_trace(wall_boundary(self.u, nv.unit()), spec_);
            face_out_[face_index(e, f, k)] = es_flux({self, ghost, nv}, spec_, opt_.surface).outward_left();
          } else {
            const int kk = l.reversed ? N - k : k;
            const NodeTrace& other = traces_[l.element * nn + mesh_.geometry[l.element].face_node(l.face, kk)];
            const FluxResult fr = es_flux({self, other, nv}, spec_, opt_.surface);
            face_out_[face_index(e, f, k)] = fr.outward_left();
            face_out_[face_index(l.element, l.face, kk)] = fr.outward_right();
          }
        }
      }
    }
  }

  void compute_alpha(const State& u) {
    const int nn = n() * n();
    const int K = mesh_.size();
    if (opt_.fixed_alpha >= 0.0) {
      alpha_.assign(K, opt_.fixed_alpha);
      return;
    }
    if (!opt_.shock_capturing) {
      alpha_.assign(K, 0.0);
      return;
    }
    std::vector<double> raw(K), q(nn);
    std::vector<char> dry(K);
    std::vector<std::vector<int>> nb(K);
    for (int e = 0; e < K; ++e) {
      const std::span<const LayerState> nodes(u.data() + e * nn, nn);
      for (int p = 0; p < nn; ++p) q[p] = indicator_quantity(nodes[p], spec_);
      raw[e] = indicator_.alpha(q, 2);
      dry[e] = partially_dry(nodes, spec_.layers, thresholds_.tau_wet);
      for (const FaceLink& l : mesh_.links[e])
        if (l.element >= 0) nb[e].push_back(l.element);
    }
    alpha_ = finalize_alpha(raw, nb, dry, thresholds_.alpha_max);
  }

  void dg_element(int e, Rhs& du) {
    const int n = this->n(), nn = n * n, N = ops_.N, M = spec_.layers;
    const double g_ = spec_.gravity;
    const ElementGeometry& g = mesh_.geometry[e];
    const NodeTrace* tr = traces_.data() + e * nn;
    R_.resize(nn);
    vol_.assign(nn, LayerVars{});
    for (int p = 0; p < nn; ++p)
      for (int m = 0; m < M; ++m) R_[p][m] = pressure_level(tr[p].u, spec_, m);

    // xi lines use Ja1, eta lines use Ja2; rows of D sum to zero, so
    // sum_l D_il f_il = sum_l D_il (f_il - F_i)
    for (int dir = 0; dir < 2; ++dir) {
      const std::vector<double>& ax = dir == 0 ? g.Ja1x : g.Ja2x;
      const std::vector<double>& ay = dir == 0 ? g.Ja1y : g.Ja2y;
      F_.resize(nn);
      for (int p = 0; p < nn; ++p) F_[p] = physical_flux(tr[p], spec_, Normal{ax[p], ay[p]});
      for (int line = 0; line < n; ++line) {
        auto node = [&](int a) { return dir == 0 ? g.idx(a, line) : g.idx(line, a); };
        for (int i = 0; i < n; ++i) {
          const int pi = node(i);
          for (int l = i + 1; l < n; ++l) {
            const int pl = node(l);
            const Normal avg{0.5 * (ax[pi] + ax[pl]), 0.5 * (ay[pi] + ay[pl])};
            const LayerVars f = ec_flux(tr[pi], tr[pl], spec_, avg);
            const double dil = ops_.d(i, l), dli = ops_.d(l, i);
            LayerVars& vi = vol_[pi];
            LayerVars& vl = vol_[pl];
            const LayerVars& Fi = F_[pi];
            const LayerVars& Fl = F_[pl];
            for (int m = 0; m < M; ++m) {
              vi.h[m] += 2.0 * dil * (f.h[m] - Fi.h[m]);
              vi.hv[m] += 2.0 * dil * (f.hv[m] - Fi.hv[m]);
              vi.hw[m] += 2.0 * dil * (f.hw[m] - Fi.hw[m]);
              vl.h[m] += 2.0 * dli * (f.h[m] - Fl.h[m]);
              vl.hv[m] += 2.0 * dli * (f.hv[m] - Fl.hv[m]);
              vl.hw[m] += 2.0 * dli * (f.hw[m] - Fl.hw[m]);
              const double jump = R_[pl][m] - R_[pi][m];
              const double ci = dil * g_ * tr[pi].u.h[m] * jump;
              const double cl = -dli * g_ * tr[pl].u.h[m] * jump;
              vi.hv[m] += ci * avg.x;
              vi.hw[m] += ci * avg.y;
              vl.hv[m] += cl * avg.x;
              vl.hw[m] += cl * avg.y;
            }
          }
        }
      }
    }
    for (int f = 0; f < kFaces; ++f)
      for (int k = 0; k < n; ++k) {
        const int p = g.face_node(f, k);
        const int along = f < 2 ? (f == 0 ? 0 : N) : (f == 2 ? 0 : N);
        LayerVars s = face_out_[face_index(e, f, k)];
        s.add_scaled(physical_flux(tr[p], spec_, g.normal[f][k]), -1.0);
        vol_[p].add_scaled(s, 1.0 / ops_.w[along]);
      }
    for (int p = 0; p < nn; ++p) du[e * nn + p] = (-1.0 / g.J[p]) * vol_[p];
  }

  void fv_element(int e, std::vector<LayerVars>& out) {
    const int n = this->n(), nn = n * n, N = ops_.N;
    const ElementGeometry& g = mesh_.geometry[e];
    const NodeTrace* tr = traces_.data() + e * nn;
    out.assign(nn, LayerVars{});
    for (int dir = 0; dir < 2; ++dir) {
      const std::vector<Normal>& sub = dir == 0 ? sub_xi_[e] : sub_eta_[e];
      const int f_lo = dir == 0 ? 0 : 2, f_hi = dir == 0 ? 1 : 3;
      for (int line = 0; line < n; ++line) {
        auto node = [&](int a) { return dir == 0 ? g.idx(a, line) : g.idx(line, a); };
        LayerVars left = face_out_[face_index(e, f_lo, line)];
        for (int k = 0; k <= N; ++k) {
          LayerVars right;
          LayerVars next_left;
          if (k == N) {
            right = face_out_[face_index(e, f_hi, line)];
          } else {
            const FluxResult fr = es_flux({tr[node(k)], tr[node(k + 1)], sub[line * N + k]}, spec_);
            right = fr.outward_left();
            next_left = fr.outward_right();
          }
          LayerVars sum = left + right;
          out[node(k)].add_scaled(sum, 1.0 / ops_.w[k]);
          left = next_left;
        }
      }
    }
    for (int p = 0; p < nn; ++p) out[p] *= -1.0 / g.J[p];
  }

  LGLOperators ops_;
  ShockIndicator indicator_;
  Mesh2D mesh_;
  DGOptions opt_;
  std::vector<double> weights_;
  std::vector<double> alpha_;
  std::vector<std::vector<Normal>> sub_xi_, sub_eta_;
  std::vector<double> dt_factor_;
  std::vector<NodeTrace> traces_;
  std::vector<LayerVars> face_out_;
  std::vector<LayerArray> R_;
  std::vector<LayerVars> vol_;
  std::vector<LayerVars> F_;
  std::vector<LayerVars> fv_buffer_;
};

}  // namespace mlswe
