#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "mlswe/dg1d.hpp"
#include "mlswe/dg2d.hpp"
#include "mlswe/fv1d.hpp"
#include "mlswe/random_states.hpp"
#include "mlswe/time_integration.hpp"

using namespace mlswe;

namespace {

constexpr double kPi = std::numbers::pi;

/// Layer heights of a lake at rest with flat interfaces H (top first) over b.
LayerState lake(const std::vector<double>& H, double b) {
  LayerState s;
  s.b = b;
  const int M = static_cast<int>(H.size());
  for (int m = 0; m < M; ++m) {
    const double below = m + 1 < M ? std::max(H[m + 1], b) : b;
    s.h[m] = std::max(0.0, H[m] - std::max(below, b));
  }
  return s;
}

double max_abs(const Rhs& du, int layers) {
  double r = 0.0;
  for (const auto& d : du)
    for (int m = 0; m < layers; ++m) r = std::max({r, std::abs(d.h[m]), std::abs(d.hv[m]), std::abs(d.hw[m])});
  return r;
}

State smooth_2d(const Solver& s, const EquationSpec& spec) {
  State u;
  for (const Point p : s.coordinates()) {
    LayerState n;
    n.b = 0.1 * std::sin(2 * kPi * p.x) * std::cos(2 * kPi * p.y);
    for (int m = 0; m < spec.layers; ++m) {
      n.h[m] = 0.5 + 0.1 * (m + 1) * std::cos(2 * kPi * (p.x + 0.3 * m)) * std::sin(2 * kPi * p.y);
      n.hv[m] = n.h[m] * (0.3 + 0.2 * std::sin(2 * kPi * p.y));
      n.hw[m] = n.h[m] * (-0.2 + 0.1 * std::cos(2 * kPi * p.x));
    }
    u.push_back(n);
  }
  return u;
}

struct EntropyRate {
  double value, scale;
};

EntropyRate entropy_rate(const Solver& s, const State& u, const Rhs& du) {
  EntropyRate r{0.0, 0.0};
  const auto& w = s.weights();
  for (std::size_t p = 0; p < u.size(); ++p) {
    const LayerVars ev = entropy_variables(u[p], s.spec());
    for (int m = 0; m < s.spec().layers; ++m)
      for (double t : {ev.h[m] * du[p].h[m], ev.hv[m] * du[p].hv[m], ev.hw[m] * du[p].hw[m]}) {
        r.value += w[p] * t;
        r.scale += w[p] * std::abs(t);
      }
  }
  return r;
}

}  // namespace

TEST(Dg1d, SubcellUpdateMatchesStandaloneFiniteVolume) {
  StateSampler rs(11);
  for (Boundary bc : {Boundary::periodic, Boundary::wall})
    for (int N : {1, 3, 5}) {
      const auto spec = random_spec(rs, 3, 1, 9.81);
      DGOptions opt;
      opt.fixed_alpha = 1.0;
      DG1D dg(spec, {}, N, 6, -1.0, 2.0, bc, opt);
      std::vector<double> widths;
      for (int e = 0; e < 6; ++e)
        for (int i = 0; i < dg.n(); ++i) widths.push_back(dg.jacobian() * dg.ops().w[i]);
      FV1D fv(spec, {}, Grid1D::from_widths(widths, -1.0, bc));
      State u;
      for (int p = 0; p < dg.num_nodes(); ++p) u.push_back(rs.state(spec));
      Rhs a, b;
      dg.rhs(u, 0.0, a);
      fv.rhs(u, 0.0, b);
      for (int p = 0; p < dg.num_nodes(); ++p)
        for (int m = 0; m < 3; ++m) {
          EXPECT_NEAR(a[p].h[m], b[p].h[m], 1e-13 * (1.0 + std::abs(b[p].h[m])));
          EXPECT_NEAR(a[p].hv[m], b[p].hv[m], 1e-13 * (1.0 + std::abs(b[p].hv[m])));
        }
    }
}

TEST(Dg1d, LakeAtRestWetDry) {
  const auto spec = EquationSpec::make(1, 9.81, {0.9, 1.0, 1.1});
  for (double alpha : {-1.0, 1.0}) {
    DGOptions opt;
    opt.fixed_alpha = alpha;
    DG1D dg(spec, {}, 4, 20, 0.0, 1.0, Boundary::wall, opt);
    State u;
    for (const Point p : dg.coordinates())
      u.push_back(lake({1.5, 1.0, 0.5}, 0.6 + 0.5 * std::sin(2 * kPi * p.x) + 0.3 * std::exp(-100 * (p.x - 0.4) * (p.x - 0.4))));
    Rhs du;
    dg.rhs(u, 0.0, du);
    EXPECT_LT(max_abs(du, 3), 1e-12) << "alpha " << alpha;
  }
}

TEST(Dg1d, EntropyConservativeAndStable) {
  const auto spec = EquationSpec::make(1, 1.1, {0.9, 1.0, 1.1});
  for (SurfaceFlux kind : {SurfaceFlux::entropy_conservative, SurfaceFlux::entropy_stable}) {
    DGOptions opt;
    opt.surface = kind;
    opt.fixed_alpha = 0.0;
    DG1D dg(spec, {}, 5, 4, 0.0, 1.0, Boundary::periodic, opt);
    State u;
    const auto xs = dg.coordinates();
    for (int q = 0; q < dg.num_nodes(); ++q) {
      const Point p = xs[q];
      LayerState s;
      s.b = 0.2 * std::sin(2 * kPi * p.x);
      for (int m = 0; m < 3; ++m) {
        s.h[m] = 0.6 + 0.2 * std::cos(2 * kPi * (p.x + 0.2 * m)) + 0.05 * ((q / dg.n()) % 2);
        s.hv[m] = s.h[m] * (0.5 * std::sin(2 * kPi * p.x) - 0.1 * m);
      }
      u.push_back(s);
    }
    Rhs du;
    dg.rhs(u, 0.0, du);
    const EntropyRate r = entropy_rate(dg, u, du);
    if (kind == SurfaceFlux::entropy_conservative)
      EXPECT_LT(std::abs(r.value), 1e-12 * r.scale);
    else
      EXPECT_LT(r.value, -1e-6 * r.scale);
  }
}

TEST(Dg1d, TimeStepFormula) {
  const auto spec = EquationSpec::make(1, 9.81, {1.0});
  DG1D dg(spec, {}, 3, 10, 0.0, 1.0, Boundary::periodic);
  LayerState s;
  s.h[0] = 2.0;
  s.hv[0] = 1.0;
  const double lam = 0.5 + std::sqrt(9.81 * 2.0);
  EXPECT_NEAR(dg.max_dt(State(dg.num_nodes(), s), 0.7), 0.7 * 0.05 * dg.ops().w[0] / (2.0 * lam), 1e-15);
}

TEST(Dg1d, DamBreakStaysPositiveAndConservesMass) {
  const auto spec = EquationSpec::make(1, 9.81, {0.9, 1.0});
  DG1D dg(spec, {}, 4, 30, 0.0, 1.0, Boundary::wall);
  State u;
  for (const Point p : dg.coordinates()) {
    LayerState s;
    s.b = 0.2 * std::exp(-50 * (p.x - 0.7) * (p.x - 0.7));
    if (p.x < 0.4) s.h = {0.4, 0.6};
    u.push_back(s);
  }
  auto mass = [&](const State& x, int m) {
    double s = 0.0;
    for (int p = 0; p < dg.num_nodes(); ++p) s += dg.weights()[p] * x[p].h[m];
    return s;
  };
  const double m0 = mass(u, 0), m1 = mass(u, 1);
  Rhs du;
  double t = 0.0;
  for (int step = 0; step < 200; ++step) {
    const double dt = dg.max_dt(u, 0.7);
    ssprk43_step(dg, u, t, dt, du);
    t += dt;
    for (const auto& s : u)
      for (int m = 0; m < 2; ++m) ASSERT_GE(s.h[m], 0.0);
  }
  EXPECT_NEAR(mass(u, 0), m0, 1e-12 * m0);
  EXPECT_NEAR(mass(u, 1), m1, 1e-12 * m1);
}

TEST(Dg2d, FreeStreamOnWarpedMesh) {
  const auto spec = EquationSpec::make(2, 9.81, {0.9, 1.0, 1.1});
  for (double alpha : {0.0, 0.5, 1.0}) {
    DGOptions opt;
    opt.fixed_alpha = alpha;
    DG2D dg(spec, {}, build_lgl(5), structured_mesh(4, 4, 0.0, 1.0, 0.0, 1.0, 0.1, true, build_lgl(5)), opt);
    LayerState s;
    s.h = {0.5, 0.7, 0.9};
    s.hv = {0.4, -0.2, 0.1};
    s.hw = {-0.3, 0.5, 0.2};
    s.b = 0.25;
    Rhs du;
    dg.rhs(State(dg.num_nodes(), s), 0.0, du);
    EXPECT_LT(max_abs(du, 3), 1e-12) << "alpha " << alpha;
  }
}

TEST(Dg2d, LakeAtRestOnWarpedMesh) {
  const auto spec = EquationSpec::make(2, 9.81, {0.9, 1.0, 1.1});
  const auto ops = build_lgl(6);
  for (double alpha : {-1.0, 0.0, 1.0}) {
    DGOptions opt;
    opt.fixed_alpha = alpha;
    DG2D dg(spec, {}, ops, structured_mesh(4, 4, 0.0, 1.0, 0.0, 1.0, 0.1, true, ops), opt);
    State wet, dry;
    for (const Point p : dg.coordinates()) {
      const double b = 0.2 + 0.1 * std::sin(2 * kPi * p.x) + 0.1 * std::cos(2 * kPi * p.y);
      wet.push_back(lake({1.5, 1.0, 0.5}, b));
      dry.push_back(lake({1.5, 1.0, 0.5}, b + 0.8 * std::exp(-20 * ((p.x - 0.5) * (p.x - 0.5) + (p.y - 0.4) * (p.y - 0.4)))));
    }
    Rhs du;
    dg.rhs(wet, 0.0, du);
    EXPECT_LT(max_abs(du, 3), 1e-12) << "alpha " << alpha;
    if (alpha == 0.0) continue;
    dg.rhs(dry, 0.0, du);
    EXPECT_LT(max_abs(du, 3), 1e-12) << "alpha " << alpha;
  }
}

TEST(Dg2d, ReducesToOneDimensionalSolver) {
  const auto s1 = EquationSpec::make(1, 9.81, {0.9, 1.0});
  const auto s2 = EquationSpec::make(2, 9.81, {0.9, 1.0});
  const int N = 3, K = 5;
  for (double alpha : {0.0, 0.3, 1.0}) {
    DGOptions opt;
    opt.fixed_alpha = alpha;
    DG1D d1(s1, {}, N, K, 0.0, 2.0, Boundary::periodic, opt);
    const auto ops = build_lgl(N);
    DG2D d2(s2, {}, ops, structured_mesh(K, 2, 0.0, 2.0, 0.0, 0.7, 0.0, true, ops), opt);
    auto state = [](double x) {
      LayerState s;
      s.b = 0.1 * std::sin(kPi * x);
      s.h = {0.4 + 0.1 * std::cos(kPi * x), 0.8 - 0.2 * std::sin(kPi * x)};
      s.hv = {s.h[0] * 0.3, s.h[1] * std::cos(kPi * x)};
      return s;
    };
    State u1, u2;
    for (const Point p : d1.coordinates()) u1.push_back(state(p.x));
    for (const Point p : d2.coordinates()) u2.push_back(state(p.x));
    Rhs r1, r2;
    d1.rhs(u1, 0.0, r1);
    d2.rhs(u2, 0.0, r2);
    const int n = N + 1;
    for (int iy = 0; iy < 2; ++iy)
      for (int ix = 0; ix < K; ++ix)
        for (int j = 0; j < n; ++j)
          for (int i = 0; i < n; ++i) {
            const LayerVars& a = r1[ix * n + i];
            const LayerVars& b = r2[(iy * K + ix) * n * n + j * n + i];
            for (int m = 0; m < 2; ++m) {
              EXPECT_NEAR(b.h[m], a.h[m], 1e-12);
              EXPECT_NEAR(b.hv[m], a.hv[m], 1e-12);
              EXPECT_NEAR(b.hw[m], 0.0, 1e-12);
            }
          }
  }
}

TEST(Dg2d, EntropyConservativeAndStableOnWarpedMesh) {
  const auto spec = EquationSpec::make(2, 1.1, {0.9, 1.0, 1.1});
  const auto ops = build_lgl(4);
  for (SurfaceFlux kind : {SurfaceFlux::entropy_conservative, SurfaceFlux::entropy_stable}) {
    DGOptions opt;
    opt.surface = kind;
    opt.fixed_alpha = 0.0;
    DG2D dg(spec, {}, ops, structured_mesh(3, 3, 0.0, 1.0, 0.0, 1.0, 0.1, true, ops), opt);
    State u = smooth_2d(dg, spec);
    for (std::size_t p = 0; p < u.size(); ++p) u[p].h[1] += 0.05 * ((p / dg.nodes_per_element()) % 2);
    Rhs du;
    dg.rhs(u, 0.0, du);
    const EntropyRate r = entropy_rate(dg, u, du);
    if (kind == SurfaceFlux::entropy_conservative)
      EXPECT_LT(std::abs(r.value), 1e-12 * r.scale);
    else
      EXPECT_LT(r.value, -1e-6 * r.scale);
  }
}

TEST(Dg2d, ConservesMassWithBlending) {
  const auto spec = EquationSpec::make(2, 9.81, {0.9, 1.0, 1.1});
  const auto ops = build_lgl(3);
  DG2D dg(spec, {}, ops, structured_mesh(4, 3, -1.0, 1.0, -1.0, 1.0, 0.1, false, ops));
  State u = smooth_2d(dg, spec);
  for (std::size_t p = 0; p < u.size(); p += 7) u[p].h[0] = 0.0;
  Rhs du;
  dg.rhs(u, 0.0, du);
  double mx = 0.0;
  for (double a : dg.alpha()) mx = std::max(mx, a);
  EXPECT_GT(mx, 0.0);
  for (int m = 0; m < 3; ++m) {
    double s = 0.0, scale = 0.0;
    for (std::size_t p = 0; p < u.size(); ++p) {
      s += dg.weights()[p] * du[p].h[m];
      scale += dg.weights()[p] * std::abs(du[p].h[m]);
    }
    EXPECT_LT(std::abs(s), 1e-13 * scale);
  }
}

TEST(Dg2d, ReversedNeighbourGivesSameRhs) {
  const auto spec = EquationSpec::make(2, 9.81, {1.0, 1.2});
  const auto ops = build_lgl(3);
  std::istringstream plain("elements 2\n0 0 1 0 1 1 0 1\n1 0 2 0 2 1 1 1\n");
  std::istringstream turned("elements 2\n0 0 1 0 1 1 0 1\n2 1 1 1 1 0 2 0\n");
  DGOptions opt;
  opt.fixed_alpha = 0.25;
  DG2D a(spec, {}, ops, read_mesh(plain, ops), opt);
  DG2D b(spec, {}, ops, read_mesh(turned, ops), opt);
  ASSERT_TRUE(b.mesh().links[0][1].reversed);
  auto state = [](Point p) {
    LayerState s;
    s.b = 0.1 * p.x * p.y;
    s.h = {0.5 + 0.1 * std::sin(p.x + 2 * p.y), 0.6};
    s.hv = {0.2 * s.h[0], -0.1 * p.y};
    s.hw = {0.1 * p.x, 0.3 * s.h[1]};
    return s;
  };
  const auto ca = a.coordinates(), cb = b.coordinates();
  State ua, ub;
  for (const Point p : ca) ua.push_back(state(p));
  for (const Point p : cb) ub.push_back(state(p));
  Rhs ra, rb;
  a.rhs(ua, 0.0, ra);
  b.rhs(ub, 0.0, rb);
  int matched = 0;
  for (std::size_t p = 0; p < ca.size(); ++p)
    for (std::size_t q = 0; q < cb.size(); ++q)
      if (p / 16 == q / 16 && std::hypot(ca[p].x - cb[q].x, ca[p].y - cb[q].y) < 1e-12) {
        ++matched;
        for (int m = 0; m < 2; ++m) {
          EXPECT_NEAR(ra[p].h[m], rb[q].h[m], 1e-11);
          EXPECT_NEAR(ra[p].hv[m], rb[q].hv[m], 1e-11);
          EXPECT_NEAR(ra[p].hw[m], rb[q].hw[m], 1e-11);
        }
      }
  EXPECT_EQ(matched, static_cast<int>(ca.size()));
}

TEST(Dg2d, TimeStepOnCartesianMesh) {
  const auto spec = EquationSpec::make(2, 9.81, {1.0});
  const auto ops = build_lgl(4);
  DG2D dg(spec, {}, ops, structured_mesh(5, 5, 0.0, 1.0, 0.0, 1.0, 0.0, true, ops));
  LayerState s;
  s.h[0] = 1.0;
  s.hv[0] = 0.3;
  s.hw[0] = 0.4;
  const double lam = 0.5 + std::sqrt(9.81);
  EXPECT_NEAR(dg.max_dt(State(dg.num_nodes(), s), 0.9), 0.9 * 0.2 * ops.w[0] / (8.0 * lam), 1e-15);
}
