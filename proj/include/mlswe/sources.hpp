#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "mlswe/equations.hpp"

namespace mlswe {

/// Manning bottom friction -g n^2 v |v| h^(-1/3) on the momenta of every layer.
inline LayerVars manning_source(const LayerState& u, const EquationSpec& spec, double n_manning) {
  LayerVars s;
  const double c = spec.gravity * n_manning * n_manning;
  for (int m = 0; m < spec.layers; ++m) {
    const double h = u.h[m];
    if (!(h > kDryFloor)) continue;
    const double v = u.hv[m] / h, w = u.hw[m] / h;
    const double speed = std::hypot(v, w);
    const double f = -c * speed * std::cbrt(1.0 / h);
    s.hv[m] = f * v;
    s.hw[m] = f * w;
  }
  return s;
}

/// Three-layer manufactured solution with trigonometric interfaces, a
/// trigonometric bottom and constant velocities, together with the source
/// that makes it an exact solution.
class ManufacturedSolution {
 public:
  double amplitude = 0.1;
  double v = 0.8;
  double w = 1.0;

  explicit ManufacturedSolution(EquationSpec spec) : spec_(spec) {
    if (spec_.layers != 3 || spec_.dim != 2) throw ConfigError("manufactured solution needs three layers in 2D");
  }

  [[nodiscard]] LayerState state(double x, double y, double t) const {
    const auto H = interfaces(x, y, t);
    LayerState u;
    u.b = H[3].value;
    for (int m = 0; m < 3; ++m) {
      u.h[m] = H[m].value - H[m + 1].value;
      u.hv[m] = u.h[m] * v;
      u.hw[m] = u.h[m] * w;
    }
    return u;
  }

  /// s with du/dt + div f + nonconservative term = s.
  [[nodiscard]] LayerVars source(double x, double y, double t) const {
    const auto H = interfaces(x, y, t);
    std::array<Field, 3> h;
    for (int m = 0; m < 3; ++m) h[m] = H[m] - H[m + 1];
    LayerVars s;
    for (int m = 0; m < 3; ++m) {
      Field R = H[m];
      for (int k = 0; k < m; ++k) R = R + spec_.sigma(k, m) * h[k];
      const double mass = h[m].dt + v * h[m].dx + w * h[m].dy;
      s.h[m] = mass;
      s.hv[m] = v * mass + spec_.gravity * h[m].value * R.dx;
      s.hw[m] = w * mass + spec_.gravity * h[m].value * R.dy;
    }
    return s;
  }

 private:
  struct Field {
    double value = 0.0, dt = 0.0, dx = 0.0, dy = 0.0;
    Field operator+(const Field& o) const { return {value + o.value, dt + o.dt, dx + o.dx, dy + o.dy}; }
    Field operator-(const Field& o) const { return {value - o.value, dt - o.dt, dx - o.dx, dy - o.dy}; }
    friend Field operator*(double s, const Field& f) { return {s * f.value, s * f.dt, s * f.dx, s * f.dy}; }
  };

  /// H_1, H_2, H_3 and b with their first derivatives.
  [[nodiscard]] std::array<Field, 4> interfaces(double x, double y, double t) const {
    constexpr double k = 2.0 * std::numbers::pi;
    const double a = amplitude;
    const double px = k * x + t, py = k * y + t;
    auto cosine = [&](double base) {
      return Field{base + a * (std::cos(px) + std::cos(py)), -a * (std::sin(px) + std::sin(py)), -a * k * std::sin(px),
                   -a * k * std::sin(py)};
    };
    const Field H2{2.0 + a * (std::sin(px) + std::sin(py)), a * (std::cos(px) + std::cos(py)), a * k * std::cos(px),
                   a * k * std::cos(py)};
    const Field b{1.0 + a * (std::cos(k * x) + std::cos(k * y)), 0.0, -a * k * std::sin(k * x), -a * k * std::sin(k * y)};
    return {cosine(4.0), H2, cosine(1.5), b};
  }

  EquationSpec spec_;
};

}  // namespace mlswe
