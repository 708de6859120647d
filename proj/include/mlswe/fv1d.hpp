#pragma once

#include <limits>
#include <vector>

#include "mlswe/fv_solver.hpp"
#include "mlswe/solver.hpp"

namespace mlswe {

/// Standalone first-order finite volume solver on a 1D grid.
class FV1D : public Solver {
 public:
  FV1D(EquationSpec spec, Thresholds th, Grid1D grid)
      : Solver(spec, th), grid_(std::move(grid)), weights_(grid_.widths), alpha_(grid_.size(), 1.0) {}

  void rhs(const State& u, double t, Rhs& du) override {
    du = rhs_fv(u, spec_, grid_);
    add_sources(u, t, du);
    check_finite(du, 1);
  }

  [[nodiscard]] double max_dt(const State& u, double cfl) const override {
    return max_stable_dt_fv(u, spec_, grid_, cfl);
  }

  void post_stage(State& u) const override { floor_and_desingularize(u); }

  [[nodiscard]] int num_nodes() const override { return grid_.size(); }
  [[nodiscard]] int num_elements() const override { return grid_.size(); }
  [[nodiscard]] int nodes_per_element() const override { return 1; }
  [[nodiscard]] const std::vector<double>& weights() const override { return weights_; }
  [[nodiscard]] std::vector<Point> coordinates() const override {
    std::vector<Point> p;
    for (double x : grid_.centers()) p.push_back({x, 0.0});
    return p;
  }
  [[nodiscard]] const std::vector<double>& alpha() const override { return alpha_; }
  [[nodiscard]] const Grid1D& grid() const { return grid_; }

 private:
  Grid1D grid_;
  std::vector<double> weights_;
  std::vector<double> alpha_;
};

}  // namespace mlswe
