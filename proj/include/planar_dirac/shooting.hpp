#pragma once

#include "planar_dirac/radial_grid.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace planar_dirac {

/// A linear two-component radial system y' = A(rho, eps) y with traceless A,
/// so the Wronskian u1 v2 - u2 v1 of two solutions is independent of rho.
struct LinearSystem {
  std::function<Eigen::Matrix2d(double rho, double eps)> matrix;
  /// Regular-solution seed at the inner grid edge.
  std::function<Eigen::Vector2d(double rho, double eps)> origin_seed;
};

struct ShootingOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int mesh_points = 0;  // 0: chosen from the expected root count
  int max_refine_depth = 12;
  double root_tol = 1e-12;  // bracket width relative to max(1, |eps|)
};

/// Samples of one integration leg, indexed like the grid between first and last.
struct Trajectory {
  int first = 0;
  int last = 0;
  std::vector<double> u;
  std::vector<double> v;
  int size() const { return static_cast<int>(u.size()); }
};

class IntegrationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Integrates the system between grid indices, starting from y0 at index
/// `from`. Renormalizes on the fly; the returned samples share one scale.
Trajectory integrate_between(const LinearSystem& system, double eps, const RadialGrid& grid,
                             int from, int to, Eigen::Vector2d y0, const ShootingOptions& opt);

/// Decaying direction of A(rho_max, eps), oriented with u >= 0. Empty when
/// the outer region is classically allowed (no decaying solution).
std::optional<Eigen::Vector2d> decaying_seed(const Eigen::Matrix2d& a);

struct MismatchSample {
  double eps = 0.0;
  bool bound = false;     // a decaying solution exists at rho_max
  double mismatch = 0.0;  // sine of the angle between the two legs at the match point
  int nodes = 0;          // sign changes of u over both legs
};

struct MatchedSolution {
  double eps = 0.0;
  std::vector<double> u;
  std::vector<double> v;
  double mismatch = 0.0;
};

/// Two-sided shooting with matching at a fixed grid index.
class ShootingEngine {
public:
  ShootingEngine(LinearSystem system, RadialGrid grid, int match_index, ShootingOptions opt = {});

  const RadialGrid& grid() const { return grid_; }
  int match_index() const { return match_; }

  Trajectory outward(double eps) const;
  std::optional<Trajectory> inward(double eps) const;
  MismatchSample sample(double eps) const;

  /// Eigenvalue estimates in [lo, hi], ascending.
  std::vector<double> find_roots(double lo, double hi, int expected_roots) const;

  /// Joins both legs at the match point (inward leg rescaled).
  MatchedSolution matched(double eps) const;

private:
  void refine(const MismatchSample& a, const MismatchSample& b, int depth,
              std::vector<std::pair<MismatchSample, MismatchSample>>& brackets) const;
  double polish(const MismatchSample& a, const MismatchSample& b) const;

  LinearSystem system_;
  RadialGrid grid_;
  int match_;
  ShootingOptions opt_;
};

/// Sign changes of a sampled function, ignoring samples below
/// rel_floor * max|values|.
int count_nodes(const std::vector<double>& values, double rel_floor = 1e-9);

}  // namespace planar_dirac
