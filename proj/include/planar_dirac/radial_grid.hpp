#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace planar_dirac {

/// Uniform radial grid on [rho_min, rho_max].
class RadialGrid {
public:
  RadialGrid(double rho_min, double rho_max, int n_points);

  double rho_min() const { return rho_min_; }
  double rho_max() const { return rho_max_; }
  int size() const { return n_; }
  double step() const { return h_; }
  double at(int i) const { return rho_min_ + h_ * i; }
  std::vector<double> points() const;

  /// Composite Simpson weights (3/8 rule closes an odd interval count).
  const std::vector<double>& weights() const { return weights_; }
  double integrate(std::span<const double> values) const;

  /// Nearest grid index to rho, clamped to the grid.
  int index_of(double rho) const;

private:
  double rho_min_;
  double rho_max_;
  int n_;
  double h_;
  std::vector<double> weights_;
};

/// Default grid: rho_min = 1e-4, 2000 uniform points.
RadialGrid default_grid(double rho_max, int n_points = 2000);

}  // namespace planar_dirac
