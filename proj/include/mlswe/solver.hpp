#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "mlswe/desingularize.hpp"
#include "mlswe/equations.hpp"
#include "mlswe/mesh2d.hpp"

namespace mlswe {

using State = std::vector<LayerState>;
using Rhs = std::vector<LayerVars>;

/// Pointwise source term s(node, u, t) added to the right-hand side.
using SourceFn = std::function<LayerVars(int node, const LayerState& u, double t)>;

/// Common interface of the semi-discretizations driven by the time stepper.
class Solver {
 public:
  virtual ~Solver() = default;

  virtual void rhs(const State& u, double t, Rhs& du) = 0;
  /// Largest stable step for the given CFL number.
  [[nodiscard]] virtual double max_dt(const State& u, double cfl) const = 0;
  /// Positivity limiting, height floor and momentum desingularization.
  virtual void post_stage(State& u) const = 0;

  [[nodiscard]] virtual int num_nodes() const = 0;
  [[nodiscard]] virtual int num_elements() const = 0;
  [[nodiscard]] virtual int nodes_per_element() const = 0;
  /// Quadrature weight (J * omega, or cell width) of every node.
  [[nodiscard]] virtual const std::vector<double>& weights() const = 0;
  [[nodiscard]] virtual std::vector<Point> coordinates() const = 0;
  /// Blending coefficient per element from the last right-hand side.
  [[nodiscard]] virtual const std::vector<double>& alpha() const = 0;

  [[nodiscard]] const EquationSpec& spec() const { return spec_; }
  [[nodiscard]] const Thresholds& thresholds() const { return thresholds_; }

  SourceFn source;

  /// Smallest layer height seen after limiting and before the height floor,
  /// over all post-stage calls since the last reset.
  [[nodiscard]] double min_height() const { return min_height_; }
  void reset_min_height() const { min_height_ = std::numeric_limits<double>::infinity(); }

 protected:
  Solver(EquationSpec spec, Thresholds th) : spec_(spec), thresholds_(th) {
    spec_.validate();
    thresholds_.validate();
  }

  void add_sources(const State& u, double t, Rhs& du) const {
    if (!source) return;
    for (int p = 0; p < static_cast<int>(u.size()); ++p) du[p] += source(p, u[p], t);
  }

  static void check_finite(const Rhs& du, int nodes_per_element) {
    for (std::size_t p = 0; p < du.size(); ++p)
      if (!du[p].finite())
        throw NumericalError("non-finite right-hand side in element " + std::to_string(p / nodes_per_element) +
                             ", node " + std::to_string(p % nodes_per_element));
  }

  void floor_and_desingularize(State& u) const {
    for (auto& node : u) {
      for (int m = 0; m < spec_.layers; ++m) min_height_ = std::min(min_height_, node.h[m]);
      desingularize_node(node, spec_.layers, thresholds_.tau_vel);
    }
  }

  EquationSpec spec_;
  Thresholds thresholds_;
  mutable double min_height_ = std::numeric_limits<double>::infinity();
};

}  // namespace mlswe
