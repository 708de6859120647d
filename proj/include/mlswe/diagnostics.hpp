#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

#include "mlswe/solver.hpp"

namespace mlswe {

/// Quadrature integral of the entropy over the domain.
inline double total_entropy(const Solver& s, const State& u) {
  double S = 0.0;
  const auto& w = s.weights();
  for (std::size_t p = 0; p < u.size(); ++p) S += w[p] * entropy(u[p], s.spec());
  return S;
}

inline double domain_measure(const Solver& s) {
  double a = 0.0;
  for (double w : s.weights()) a += w;
  return a;
}

inline std::vector<double> layer_mass(const Solver& s, const State& u) {
  std::vector<double> m(s.spec().layers, 0.0);
  const auto& w = s.weights();
  for (std::size_t p = 0; p < u.size(); ++p)
    for (int k = 0; k < s.spec().layers; ++k) m[k] += w[p] * u[p].h[k];
  return m;
}

/// Deviation of the interface heights H_m from a reference state.
struct LakeAtRestError {
  std::vector<double> mean;  ///< (1/|Omega|) int H_m - H_m,ref
  std::vector<double> max;   ///< max |H_m - H_m,ref|
};

inline LakeAtRestError lake_at_rest_error(const Solver& s, const State& u, const State& ref) {
  const int M = s.spec().layers;
  LakeAtRestError e{std::vector<double>(M, 0.0), std::vector<double>(M, 0.0)};
  const auto& w = s.weights();
  for (std::size_t p = 0; p < u.size(); ++p)
    for (int m = 0; m < M; ++m) {
      const double d = total_layer_height(u[p], M, m) - total_layer_height(ref[p], M, m);
      e.mean[m] += w[p] * d;
      e.max[m] = std::max(e.max[m], std::abs(d));
    }
  const double area = domain_measure(s);
  for (double& v : e.mean) v /= area;
  return e;
}

/// L2 error of the layer heights against an exact solution, normalized by |Omega|.
inline std::vector<double> l2_height_error(const Solver& s, const State& u, const State& exact) {
  const int M = s.spec().layers;
  std::vector<double> e(M, 0.0);
  const auto& w = s.weights();
  for (std::size_t p = 0; p < u.size(); ++p)
    for (int m = 0; m < M; ++m) {
      const double d = u[p].h[m] - exact[p].h[m];
      e[m] += w[p] * d * d;
    }
  const double area = domain_measure(s);
  for (double& v : e) v = std::sqrt(v / area);
  return e;
}

inline double min_height(const State& u, int layers) {
  double h = std::numeric_limits<double>::infinity();
  for (const auto& n : u)
    for (int m = 0; m < layers; ++m) h = std::min(h, n.h[m]);
  return h;
}

/// Index of the node closest to p.
inline int nearest_node(const std::vector<Point>& xy, Point p) {
  int best = 0;
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < xy.size(); ++q) {
    const double e = std::hypot(xy[q].x - p.x, xy[q].y - p.y);
    if (e < d) {
      d = e;
      best = static_cast<int>(q);
    }
  }
  return best;
}

inline double water_depth(const LayerState& u, int layers) {
  double h = 0.0;
  for (int m = layers - 1; m >= 0; --m) h += u.h[m];
  return h;
}

/// Snapshot CSV: x[,y], b, h_m, hv_m[, hw_m], alpha.
inline void write_snapshot(std::ostream& out, const Solver& s, const State& u) {
  const int M = s.spec().layers;
  const bool two_d = s.spec().dim == 2;
  out << (two_d ? "x,y,b" : "x,b");
  for (int m = 1; m <= M; ++m) out << ",h_" << m;
  for (int m = 1; m <= M; ++m) out << ",hv_" << m;
  if (two_d)
    for (int m = 1; m <= M; ++m) out << ",hw_" << m;
  out << ",alpha\n";
  const auto xy = s.coordinates();
  const auto& alpha = s.alpha();
  const int npe = s.nodes_per_element();
  out.precision(17);
  for (std::size_t p = 0; p < u.size(); ++p) {
    out << xy[p].x;
    if (two_d) out << ',' << xy[p].y;
    out << ',' << u[p].b;
    for (int m = 0; m < M; ++m) out << ',' << u[p].h[m];
    for (int m = 0; m < M; ++m) out << ',' << u[p].hv[m];
    if (two_d)
      for (int m = 0; m < M; ++m) out << ',' << u[p].hw[m];
    const std::size_t e = p / npe;
    out << ',' << (e < alpha.size() ? alpha[e] : 0.0) << '\n';
  }
}

}  // namespace mlswe
