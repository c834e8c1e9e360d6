#include "planar_dirac/radial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace planar_dirac {

RadialGrid::RadialGrid(double rho_min, double rho_max, int n_points)
    : rho_min_(rho_min), rho_max_(rho_max), n_(n_points) {
  if (!(rho_min > 0.0) || !(rho_max > rho_min) || !std::isfinite(rho_max))
    throw std::invalid_argument("radial grid needs 0 < rho_min < rho_max < inf");
  if (rho_min > 1e-3 * rho_max)
    throw std::invalid_argument("radial grid needs rho_min <= 1e-3 rho_max");
  if (n_points < 200)
    throw std::invalid_argument("radial grid needs at least 200 points, got " +
                                std::to_string(n_points));
  h_ = (rho_max - rho_min) / (n_points - 1);

  weights_.assign(static_cast<std::size_t>(n_), 0.0);
  const int intervals = n_ - 1;
  const int simpson_end = (intervals % 2 == 0) ? n_ - 1 : n_ - 4;
  for (int i = 0; i + 2 <= simpson_end; i += 2) {
    weights_[i] += h_ / 3.0;
    weights_[i + 1] += 4.0 * h_ / 3.0;
    weights_[i + 2] += h_ / 3.0;
  }
  if (simpson_end != n_ - 1) {
    const double w = 3.0 * h_ / 8.0;
    weights_[simpson_end] += w;
    weights_[simpson_end + 1] += 3.0 * w;
    weights_[simpson_end + 2] += 3.0 * w;
    weights_[simpson_end + 3] += w;
  }
}

std::vector<double> RadialGrid::points() const {
  std::vector<double> p(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) p[i] = at(i);
  return p;
}

double RadialGrid::integrate(std::span<const double> values) const {
  if (static_cast<int>(values.size()) != n_)
    throw std::invalid_argument("integrate: value count does not match grid");
  double sum = 0.0;
  for (int i = 0; i < n_; ++i) sum += weights_[i] * values[i];
  return sum;
}

int RadialGrid::index_of(double rho) const {
  const int i = static_cast<int>(std::lround((rho - rho_min_) / h_));
  return std::clamp(i, 0, n_ - 1);
}

RadialGrid default_grid(double rho_max, int n_points) { return {1e-4, rho_max, n_points}; }

}  // namespace planar_dirac
