#include <gtest/gtest.h>

#include "mlswe/entropy_residual.hpp"
#include "mlswe/random_states.hpp"

using namespace mlswe;

namespace {

LayerState swe(double h, double v, double b = 0.0) {
  LayerState u;
  u.h[0] = h;
  u.hv[0] = h * v;
  u.b = b;
  return u;
}

FluxResult flux(const LayerState& L, const LayerState& R, const EquationSpec& spec, Normal n = {1.0, 0.0},
                SurfaceFlux kind = SurfaceFlux::entropy_stable) {
  return es_flux({make_trace(L, spec), make_trace(R, spec), n}, spec, kind);
}

/// Entropy production predicted for the reconstructed EC flux of the
/// multilayer system, evaluated from its closed form.
double closed_form_violation(const LayerState& L, const LayerState& R, const ReconstructedPair& rec,
                             const EquationSpec& spec) {
  double sum = 0.0;
  for (int m = 0; m < spec.layers; ++m) {
    const double vL = velocity(L.h[m], L.hv[m]);
    const double vR = velocity(R.h[m], R.hv[m]);
    const double flow = 0.5 * (rec.L.u.h[m] * vL + rec.R.u.h[m] * vR);
    double inner = 0.0;
    for (int k = 0; k < m; ++k) {
      const double hL = L.h[k] > kDryFloor ? L.h[k] : 0.0;
      const double hR = R.h[k] > kDryFloor ? R.h[k] : 0.0;
      const double jump = (hR - rec.R.u.h[k]) - (hL - rec.L.u.h[k]);
      inner += (spec.rho[k] / spec.rho[m] - 1.0) * jump;
    }
    sum += spec.rho[m] * inner * flow;
  }
  return spec.gravity * sum;
}

}  // namespace

TEST(EcFlux, Consistency) {
  const auto spec = EquationSpec::make(1, 1.0, {1.0});
  const auto t = make_trace(swe(1.0, 1.0), spec);
  const LayerVars f = ec_flux(t, t, spec, {1.0, 0.0});
  EXPECT_DOUBLE_EQ(f.h[0], 1.0);
  EXPECT_DOUBLE_EQ(f.hv[0], 1.0);
}

TEST(EcFlux, AverageArithmetic) {
  const auto spec = EquationSpec::make(1, 1.0, {1.0});
  const LayerVars f = ec_flux(make_trace(swe(1.0, 2.0), spec), make_trace(swe(3.0, 4.0), spec), spec, {1.0, 0.0});
  EXPECT_DOUBLE_EQ(f.h[0], 7.0);
  EXPECT_DOUBLE_EQ(f.hv[0], 21.0);
}

TEST(EcFlux, TwoDimensionalYDirection) {
  const auto spec = EquationSpec::make(2, 1.0, {1.0});
  LayerState a, b;
  a.h[0] = 1.0, a.hv[0] = 1.0, a.hw[0] = 2.0;
  b.h[0] = 2.0, b.hv[0] = 6.0, b.hw[0] = 4.0;
  const LayerVars f = ec_flux(make_trace(a, spec), make_trace(b, spec), spec, {0.0, 1.0});
  EXPECT_DOUBLE_EQ(f.h[0], 3.0);
  EXPECT_DOUBLE_EQ(f.hv[0], 3.0 * 2.0);
  EXPECT_DOUBLE_EQ(f.hw[0], 3.0 * 2.0);
}

TEST(NonconservativeJump, Values) {
  const auto spec = EquationSpec::make(1, 1.0, {1.0});
  const LayerState L = swe(1.0, 0.0, 0.0);
  const LayerState R = swe(1.0, 0.0, 0.2);
  const LayerVars d = nonconservative_jump(L, L, R, spec, {1.0, 0.0});
  EXPECT_EQ(d.h[0], 0.0);
  EXPECT_DOUBLE_EQ(d.hv[0], 0.1);
  const LayerVars z = nonconservative_jump(L, L, L, spec, {1.0, 0.0});
  EXPECT_EQ(z.hv[0], 0.0);
}

TEST(LambdaMax, Examples) {
  const auto one = EquationSpec::make(1, 1.0, {1.0});
  auto lam = [](const LayerState& a, const LayerState& b, const EquationSpec& s) {
    return lambda_max(make_trace(a, s), make_trace(b, s), s, {1.0, 0.0});
  };
  EXPECT_DOUBLE_EQ(lam(swe(1.0, 0.0), swe(1.0, 0.0), one), 1.0);
  EXPECT_DOUBLE_EQ(lam(swe(1.0, 2.0), swe(4.0, -1.0), one), 4.0);
  const auto two = EquationSpec::make(1, 2.0, {1.0, 2.0});
  LayerState u;
  u.h = {1.0, 1.0};
  EXPECT_DOUBLE_EQ(lam(u, u, two), 2.0);
}

TEST(LambdaMax, BoundsEveryLayerVelocity) {
  StateSampler s(31);
  for (int trial = 0; trial < 100000; ++trial) {
    const auto spec = random_spec(s, 1 + trial % 3, 1 + trial % 2, s.uniform(0.5, 10.0));
    const auto L = make_trace(s.state(spec), spec), R = make_trace(s.state(spec), spec);
    const double a = s.uniform(0.0, 2.0 * std::numbers::pi);
    const Normal n{std::cos(a), spec.dim == 2 ? std::sin(a) : 0.0};
    const Normal nu = n.unit();
    const double lam = lambda_max(L, R, spec, nu);
    for (int m = 0; m < spec.layers; ++m) {
      for (const auto* t : {&L, &R}) {
        if (t->u.h[m] > kDryFloor) {
          EXPECT_GE(lam, std::abs(t->v[m] * nu.x + t->w[m] * nu.y));
        }
      }
    }
  }
}

TEST(EsFlux, ConsistentOnEqualStates) {
  StateSampler s(32);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto spec = random_spec(s, 1 + trial % 3, 2, 9.81);
    const LayerState u = s.wet_state(spec);
    const FluxResult f = flux(u, u, spec, {0.6, 0.8});
    const LayerVars p = physical_flux(make_trace(u, spec), spec, {0.6, 0.8});
    for (int m = 0; m < spec.layers; ++m) {
      EXPECT_NEAR(f.fstar.h[m], p.h[m], 1e-13 * (1.0 + std::abs(p.h[m])));
      EXPECT_NEAR(f.fstar.hv[m], p.hv[m], 1e-13 * (1.0 + std::abs(p.hv[m])));
      EXPECT_NEAR(f.fstar.hw[m], p.hw[m], 1e-13 * (1.0 + std::abs(p.hw[m])));
      EXPECT_NEAR(f.diamondL.hv[m], 0.0, 1e-13);
      EXPECT_NEAR(f.diamondR.hv[m], 0.0, 1e-13);
    }
  }
}

TEST(EsFlux, LakeAtRestOverStepHasNoDissipationOrPressureJump) {
  const auto spec = EquationSpec::make(1, 1.0, {1.0});
  const FluxResult es = flux(swe(1.0, 0.0, 0.0), swe(0.5, 0.0, 0.5), spec);
  const FluxResult ec = flux(swe(1.0, 0.0, 0.0), swe(0.5, 0.0, 0.5), spec, {1.0, 0.0}, SurfaceFlux::entropy_conservative);
  EXPECT_EQ(es.fstar.h[0], ec.fstar.h[0]);
  EXPECT_EQ(es.fstar.hv[0], ec.fstar.hv[0]);
  EXPECT_EQ(es.diamondL.hv[0], 0.0);
  EXPECT_EQ(es.diamondR.hv[0], 0.0);
}

TEST(EsFlux, LakeAtRestWithDryLayersGivesZeroPressureTerms) {
  // enumerate wet/dry configurations of a three-layer lake at rest
  const auto spec = EquationSpec::make(1, 9.81, {1.0, 1.1, 1.2});
  const std::vector<double> H = {3.0, 2.0, 1.0};
  for (double bL : {0.0, 0.5, 1.5, 2.5, 3.5}) {
    for (double bR : {0.0, 0.5, 1.5, 2.5, 3.5}) {
      auto lake = [&](double b) {
        LayerState u;
        u.b = b;
        double below = b;
        for (int m = 2; m >= 0; --m) {
          u.h[m] = std::max(0.0, H[m] - below);
          below = std::max(below, H[m]);
        }
        return u;
      };
      const FluxResult f = flux(lake(bL), lake(bR), spec);
      for (int m = 0; m < 3; ++m) {
        EXPECT_EQ(f.fstar.h[m], 0.0);
        EXPECT_NEAR(f.fstar.hv[m], 0.0, 1e-15);
        EXPECT_NEAR(f.diamondL.hv[m], 0.0, 1e-14) << bL << " " << bR << " layer " << m;
        EXPECT_NEAR(f.diamondR.hv[m], 0.0, 1e-14) << bL << " " << bR << " layer " << m;
      }
    }
  }
}

TEST(EsFlux, WallMirrorBlocksMass) {
  StateSampler s(33);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto spec = random_spec(s, 1 + trial % 3, 1, 9.81);
    LayerState u = s.state(spec);
    LayerState g = u;
    for (int m = 0; m < spec.layers; ++m) g.hv[m] = -u.hv[m];
    const FluxResult f = flux(u, g, spec);
    for (int m = 0; m < spec.layers; ++m) EXPECT_EQ(f.fstar.h[m], 0.0);
  }
}

TEST(EntropyResidual, SweEcFluxWithReconstructionIsConservative) {
  StateSampler s(34);
  for (int trial = 0; trial < 200000; ++trial) {
    const auto spec = EquationSpec::make(1, s.uniform(0.5, 10.0), {s.uniform(0.5, 2.0)});
    const auto r = surface_entropy_residual(s.state(spec), s.state(spec), spec, SurfaceFlux::entropy_conservative);
    ASSERT_LE(std::abs(r.value), 1e-13 * std::max(r.scale, 1.0)) << "trial " << trial;
  }
}

TEST(EntropyResidual, MultilayerEcFluxWithoutReconstructionIsConservative) {
  StateSampler s(35);
  for (int trial = 0; trial < 200000; ++trial) {
    const auto spec = random_spec(s, 2 + trial % 2, 1 + trial % 2, s.uniform(0.5, 10.0));
    const Normal n = spec.dim == 2 ? Normal{0.6, -0.8} : Normal{1.0, 0.0};
    const auto r = raw_ec_entropy_residual(s.state(spec), s.state(spec), spec, n);
    ASSERT_LE(std::abs(r.value), 1e-13 * std::max(r.scale, 1.0)) << "trial " << trial;
  }
}

TEST(EntropyResidual, MultilayerReconstructedMatchesClosedForm) {
  StateSampler s(36);
  for (int trial = 0; trial < 200000; ++trial) {
    const auto spec = random_spec(s, 2 + trial % 2, 1, s.uniform(0.5, 10.0));
    const LayerState L = s.state(spec), R = s.state(spec);
    const FluxResult f = flux(L, R, spec, {1.0, 0.0}, SurfaceFlux::entropy_conservative);
    const auto r = entropy_residual(L, R, f.rec.L.u, f.rec.R.u, f.fstar, spec, {1.0, 0.0});
    const double closed = closed_form_violation(L, R, f.rec, spec);
    ASSERT_LE(std::abs(r.value - closed), 1e-12 * std::max(r.scale, 1.0)) << "trial " << trial;
  }
}

TEST(EntropyResidual, EsFluxDissipates) {
  StateSampler s(37);
  for (int trial = 0; trial < 300000; ++trial) {
    const auto spec = random_spec(s, 1 + trial % 3, 1 + (trial / 3) % 2, s.uniform(0.5, 10.0));
    const double a = s.uniform(0.0, 2.0 * std::numbers::pi);
    const Normal n = spec.dim == 2 ? Normal{std::cos(a), std::sin(a)} : Normal{1.0, 0.0};
    const auto r = surface_entropy_residual(s.state(spec), s.state(spec), spec, SurfaceFlux::entropy_stable, n);
    ASSERT_LE(r.value, 1e-13 * std::max(r.scale, 1.0)) << "trial " << trial;
  }
}
