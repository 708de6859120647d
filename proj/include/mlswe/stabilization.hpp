#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "mlswe/desingularize.hpp"
#include "mlswe/equations.hpp"
#include "mlswe/lgl.hpp"

namespace mlswe {

/// Modal-energy indicator for the DG/FV blending, applied to q = sum_m g h_m^3 / 2.
class ShockIndicator {
 public:
  double alpha_min = 1e-3;
  double threshold_scale = 0.5;
  double threshold_exponent = 1.8;

  explicit ShockIndicator(const LGLOperators& ops) : N_(ops.N) {
    const int n = ops.n();
    Eigen::MatrixXd V(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) V(i, j) = std::sqrt(j + 0.5) * legendre(j, ops.xi[i]).first;
    Vinv_ = V.inverse();
  }

  [[nodiscard]] double threshold() const {
    return threshold_scale * std::pow(10.0, -threshold_exponent * std::pow(N_ + 1.0, 0.25));
  }

  /// Blending strength for nodal values of one element (n values in 1D,
  /// n*n values with i fastest in 2D).
  [[nodiscard]] double alpha(std::span<const double> q, int dim) const {
    const int n = N_ + 1;
    Eigen::MatrixXd modal;
    if (dim == 1) {
      Eigen::Map<const Eigen::VectorXd> v(q.data(), n);
      modal = Vinv_ * v;
    } else {
      Eigen::Map<const Eigen::MatrixXd> Q(q.data(), n, n);  // Q(i, j)
      modal = Vinv_ * Q * Vinv_.transpose();
    }
    auto energy_up_to = [&](int top) {
      double s = 0.0;
      if (top < 0) return s;
      if (dim == 1) {
        for (int k = 0; k <= top; ++k) s += modal(k, 0) * modal(k, 0);
      } else {
        for (int j = 0; j <= top; ++j)
          for (int i = 0; i <= top; ++i) s += modal(i, j) * modal(i, j);
      }
      return s;
    };
    const double total = energy_up_to(N_);
    const double clip1 = energy_up_to(N_ - 1);
    const double clip2 = energy_up_to(N_ - 2);
    double energy = 0.0;
    if (total > 0.0) energy = (total - clip1) / total;
    if (N_ >= 2 && clip1 > 0.0) energy = std::max(energy, (clip1 - clip2) / clip1);
    const double T = threshold();
    const double s = std::log((1.0 - 1e-4) / 1e-4);
    double a = 1.0 / (1.0 + std::exp(-s / T * (energy - T)));
    if (a < alpha_min) a = 0.0;
    if (a > 1.0 - alpha_min) a = 1.0;
    return a;
  }

 private:
  int N_;
  Eigen::MatrixXd Vinv_;
};

/// Indicator quantity sum_m g h_m^3 / 2.
inline double indicator_quantity(const LayerState& u, const EquationSpec& spec) {
  double q = 0.0;
  for (int m = 0; m < spec.layers; ++m) q += 0.5 * spec.gravity * u.h[m] * u.h[m] * u.h[m];
  return q;
}

/// True if any layer at any node of the element is thinner than tau_wet.
inline bool partially_dry(std::span<const LayerState> nodes, int layers, double tau_wet) {
  for (const auto& u : nodes)
    for (int m = 0; m < layers; ++m)
      if (u.h[m] < tau_wet) return true;
  return false;
}

/// Clip to alpha_max, smooth over face neighbours, then force alpha = 1 in
/// partially dry elements.
inline std::vector<double> finalize_alpha(const std::vector<double>& raw,
                                          const std::vector<std::vector<int>>& neighbours,
                                          const std::vector<char>& dry, double alpha_max) {
  const std::size_t K = raw.size();
  std::vector<double> clipped(K);
  for (std::size_t e = 0; e < K; ++e) clipped[e] = std::min(raw[e], alpha_max);
  std::vector<double> out = clipped;
  for (std::size_t e = 0; e < K; ++e)
    for (int nb : neighbours[e]) out[e] = std::max(out[e], 0.5 * clipped[nb]);
  for (std::size_t e = 0; e < K; ++e)
    if (dry[e]) out[e] = 1.0;
  return out;
}

/// (1 - alpha) dg + alpha fv, nodewise.
inline LayerVars blend(const LayerVars& dg, const LayerVars& fv, double alpha) {
  if (alpha == 0.0) return dg;
  if (alpha == 1.0) return fv;
  LayerVars r = (1.0 - alpha) * dg;
  r.add_scaled(fv, alpha);
  return r;
}

/// Linear scaling limiter around the quadrature mean of every layer height.
/// `weights` are J * omega per node. With limit_momentum the momenta of
/// modified nodes are rescaled so that the velocity is preserved.
inline void positivity_limit(std::span<LayerState> nodes, std::span<const double> weights, int layers,
                             bool limit_momentum) {
  double vol = 0.0;
  for (double w : weights) vol += w;
  for (int m = 0; m < layers; ++m) {
    double mean = 0.0, lo = nodes[0].h[m];
    for (std::size_t p = 0; p < nodes.size(); ++p) {
      mean += weights[p] * nodes[p].h[m];
      lo = std::min(lo, nodes[p].h[m]);
    }
    mean /= vol;
    if (mean < -1e-12)
      throw NumericalError("negative mean layer height " + std::to_string(mean) + " in layer " +
                           std::to_string(m + 1));
    mean = std::max(mean, 0.0);
    if (lo >= 0.0) continue;
    const double theta = mean - lo > 0.0 ? std::min(1.0, mean / (mean - lo)) : 1.0;
    for (auto& u : nodes) {
      const double h = u.h[m];
      const double hn = theta * (h - mean) + mean;
      if (limit_momentum) {
        const double v = velocity(h, u.hv[m]);
        const double w = velocity(h, u.hw[m]);
        u.hv[m] = hn * v;
        u.hw[m] = hn * w;
      }
      u.h[m] = hn;
    }
  }
}

}  // namespace mlswe
