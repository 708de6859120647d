#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mlswe {

/// Compile-time capacity for the number of layers. The active layer count is
/// a runtime value carried by EquationSpec.
inline constexpr int kMaxLayers = 4;

using LayerArray = std::array<double, kMaxLayers>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a state or right-hand side stops being finite, or when a
/// cell average goes negative before limiting.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class MeshError : public Error {
 public:
  using Error::Error;
};

enum class Axis { x, y };

/// Direction vector used for normal projections. Unit length unless a routine
/// explicitly documents that it accepts scaled (contravariant) vectors.
struct Normal {
  double x = 1.0;
  double y = 0.0;

  [[nodiscard]] double norm() const { return std::hypot(x, y); }
  [[nodiscard]] Normal operator-() const { return {-x, -y}; }
  [[nodiscard]] Normal scaled(double s) const { return {s * x, s * y}; }
  [[nodiscard]] Normal unit() const {
    const double n = norm();
    return {x / n, y / n};
  }
};

inline Normal axis_normal(Axis a) { return a == Axis::x ? Normal{1.0, 0.0} : Normal{0.0, 1.0}; }

/// Per-layer vector with one mass and two momentum slots: used for conserved
/// increments, fluxes, nonconservative terms, and entropy variables alike.
/// In one dimension the y-momentum slot stays zero.
struct LayerVars {
  LayerArray h{};
  LayerArray hv{};
  LayerArray hw{};

  LayerVars& operator+=(const LayerVars& o) {
    for (int m = 0; m < kMaxLayers; ++m) {
      h[m] += o.h[m];
      hv[m] += o.hv[m];
      hw[m] += o.hw[m];
    }
    return *this;
  }
  LayerVars& operator-=(const LayerVars& o) {
    for (int m = 0; m < kMaxLayers; ++m) {
      h[m] -= o.h[m];
      hv[m] -= o.hv[m];
      hw[m] -= o.hw[m];
    }
    return *this;
  }
  LayerVars& operator*=(double s) {
    for (int m = 0; m < kMaxLayers; ++m) {
      h[m] *= s;
      hv[m] *= s;
      hw[m] *= s;
    }
    return *this;
  }
  /// this += s * o
  void add_scaled(const LayerVars& o, double s) {
    for (int m = 0; m < kMaxLayers; ++m) {
      h[m] += s * o.h[m];
      hv[m] += s * o.hv[m];
      hw[m] += s * o.hw[m];
    }
  }
  [[nodiscard]] bool finite() const {
    for (int m = 0; m < kMaxLayers; ++m) {
      if (!std::isfinite(h[m]) || !std::isfinite(hv[m]) || !std::isfinite(hw[m])) return false;
    }
    return true;
  }
  /// Dot product over the first `layers` layers.
  [[nodiscard]] double dot(const LayerVars& o, int layers) const {
    double s = 0.0;
    for (int m = 0; m < layers; ++m) s += h[m] * o.h[m] + hv[m] * o.hv[m] + hw[m] * o.hw[m];
    return s;
  }
};

inline LayerVars operator+(LayerVars a, const LayerVars& b) { return a += b; }
inline LayerVars operator-(LayerVars a, const LayerVars& b) { return a -= b; }
inline LayerVars operator*(double s, LayerVars a) { return a *= s; }

/// Conserved variables of all layers at one point plus the bottom elevation.
/// The bottom is time invariant; arithmetic with LayerVars leaves it untouched.
struct LayerState : LayerVars {
  double b = 0.0;

  [[nodiscard]] const LayerVars& vars() const { return *this; }
  [[nodiscard]] LayerVars& vars() { return *this; }
  [[nodiscard]] bool finite() const { return LayerVars::finite() && std::isfinite(b); }
};

}  // namespace mlswe
