#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "mlswe/types.hpp"

namespace mlswe {

/// Legendre polynomial P_n and its derivative at x.
inline std::pair<double, double> legendre(int n, double x) {
  if (n == 0) return {1.0, 0.0};
  double p0 = 1.0, p1 = x;
  double d0 = 0.0, d1 = 1.0;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    const double d2 = d0 + (2.0 * k - 1.0) * p1;
    p0 = p1;
    p1 = p2;
    d0 = d1;
    d1 = d2;
  }
  return {p1, d1};
}

/// Nodal operators on the N+1 Legendre-Gauss-Lobatto points. Matrices are
/// stored row-major with stride N+1.
struct LGLOperators {
  int N = 1;
  std::vector<double> xi;
  std::vector<double> w;
  std::vector<double> D;

  [[nodiscard]] int n() const { return N + 1; }
  [[nodiscard]] double d(int i, int l) const { return D[i * (N + 1) + l]; }

  /// Q = M D
  [[nodiscard]] std::vector<double> Q() const {
    std::vector<double> q(D.size());
    for (int i = 0; i <= N; ++i)
      for (int l = 0; l <= N; ++l) q[i * (N + 1) + l] = w[i] * d(i, l);
    return q;
  }

  [[nodiscard]] std::vector<double> B() const {
    std::vector<double> b(D.size(), 0.0);
    b[0] = -1.0;
    b[D.size() - 1] = 1.0;
    return b;
  }

  /// Lagrange basis at x through the LGL nodes.
  [[nodiscard]] std::vector<double> lagrange(double x) const {
    std::vector<double> ell(n(), 1.0);
    for (int j = 0; j <= N; ++j)
      for (int k = 0; k <= N; ++k)
        if (k != j) ell[j] *= (x - xi[k]) / (xi[j] - xi[k]);
    return ell;
  }
};

inline LGLOperators build_lgl(int N) {
  if (N < 1 || N > 30) throw ConfigError("polynomial degree must lie in [1, 30]");
  LGLOperators ops;
  ops.N = N;
  const int n = N + 1;
  ops.xi.assign(n, 0.0);
  ops.w.assign(n, 0.0);
  ops.xi[0] = -1.0;
  ops.xi[N] = 1.0;
  // interior nodes: roots of P'_N, i.e. of q = P_{N+1} - P_{N-1}
  for (int j = 1; j < N; ++j) {
    double x = -std::cos(std::numbers::pi * j / N);
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      const auto [pp, dp] = legendre(N + 1, x);
      const auto [pm, dm] = legendre(N - 1, x);
      const double dx = (pp - pm) / (dp - dm);
      x -= dx;
      if (std::abs(dx) <= 1e-15 * std::max(1.0, std::abs(x))) {
        converged = true;
        break;
      }
    }
    if (!converged) throw Error("LGL node iteration did not converge");
    ops.xi[j] = x;
  }
  for (int j = 0; j < N; ++j)
    if (!(ops.xi[j + 1] > ops.xi[j])) throw Error("LGL nodes are not strictly increasing");
  // enforce exact symmetry
  for (int j = 0; j < n / 2; ++j) {
    const double s = 0.5 * (ops.xi[N - j] - ops.xi[j]);
    ops.xi[j] = -s;
    ops.xi[N - j] = s;
  }
  if (n % 2 == 1) ops.xi[N / 2] = 0.0;
  for (int j = 0; j <= N; ++j) {
    const double p = legendre(N, ops.xi[j]).first;
    ops.w[j] = 2.0 / (N * (N + 1.0) * p * p);
  }
  // barycentric derivative matrix with negative-sum diagonal
  std::vector<double> bw(n, 1.0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (k != j) bw[j] /= (ops.xi[j] - ops.xi[k]);
  ops.D.assign(n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int l = 0; l < n; ++l) {
      if (l == i) continue;
      const double v = bw[l] / bw[i] / (ops.xi[i] - ops.xi[l]);
      ops.D[i * n + l] = v;
      diag -= v;
    }
    ops.D[i * n + i] = diag;
  }
  return ops;
}

}  // namespace mlswe
