#pragma once

#include "planar_dirac/potentials.hpp"
#include "planar_dirac/quantum_numbers.hpp"
#include "planar_dirac/radial_grid.hpp"
#include "planar_dirac/shooting.hpp"

#include <string>
#include <utility>
#include <vector>

namespace planar_dirac {

/// A normalized bound state of the coupled radial system
///   g' =  (k/rho - W) g + (m + eps - V_delta) f
///   f' = -(k/rho - W) f + (m - eps + V_sigma) g,   W = U_rho + s V_phi,
/// for the spinor rho^{-1/2} (i g h_{l,s}, f h_{l+s,-s}).
struct RadialSolution {
  QuantumNumbers sector;
  int n = 0;        // interior sign changes of g
  int n_lower = 0;  // interior sign changes of f
  double energy = 0.0;
  RadialGrid grid;
  std::vector<double> g;
  std::vector<double> f;
  double norm_residual = 0.0;
  double match_residual = 0.0;
};

/// Right-hand sides (dg/drho, df/drho). Throws DomainError for rho <= 0.
std::pair<double, double> radial_rhs(double rho, double g, double f, const QuantumNumbers& sector,
                                     double eps, const PotentialSet& potentials);

/// The coupled first-order system as a traceless linear system with the
/// regular-solution seed g ~ rho^max(k,1-k), f ~ rho^max(k+1,-k).
LinearSystem dirac_radial_system(const QuantumNumbers& sector, const PotentialSet& potentials);

/// Effective potential of the decoupled upper-component equation at energy
/// eps (coupling term dropped); used to place the match point.
double effective_potential(double rho, const QuantumNumbers& sector, double eps,
                           const PotentialSet& potentials);

/// Grid index of the effective-potential minimum over [rho_max/50, 0.9 rho_max];
/// rho_max/3 when the minimum sits on the outer edge.
int choose_match_index(const RadialGrid& grid, const QuantumNumbers& sector, double eps,
                       const PotentialSet& potentials);

/// Radius beyond the outermost classical turning point at which the local
/// decay exponent integrates to `decay` (default e^-20 envelope).
double decay_radius(const QuantumNumbers& sector, double eps, const PotentialSet& potentials,
                    double decay = 20.0);

enum class Direction { outward, inward };

/// Integrates from rho_min with the regular seed, or from rho_max with the
/// decaying seed, over the whole grid.
Trajectory integrate(Direction direction, const QuantumNumbers& sector, double eps,
                     const PotentialSet& potentials, const RadialGrid& grid,
                     const ShootingOptions& opt = {});

enum class NodeLabel { upper, lower };

struct BoundStateOptions {
  int max_nodes = 4;
  NodeLabel label = NodeLabel::upper;  // which amplitude's node count max_nodes limits
  ShootingOptions shooting;
};

struct BoundStateSearch {
  std::vector<RadialSolution> solutions;
  std::vector<std::string> warnings;
};

/// Shooting search for bound states in the energy window, ascending in energy.
BoundStateSearch find_bound_states(const QuantumNumbers& sector, const PotentialSet& potentials,
                                   std::pair<double, double> window, const RadialGrid& grid,
                                   const BoundStateOptions& options = {});

class SymmetryConditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class DecoupledComponent { upper_g, lower_f };

/// Solves the decoupled second-order equation for g (spin symmetry) or f
/// (pseudospin symmetry) and rebuilds the companion from the first-order
/// relation. Throws SymmetryConditionError when the condition fails.
BoundStateSearch second_order_solve(const QuantumNumbers& sector, const PotentialSet& potentials,
                                    DecoupledComponent which, std::pair<double, double> window,
                                    const RadialGrid& grid, const BoundStateOptions& options = {});

/// Centrifugal coefficient of the decoupled g equation, k(k-1), exact on 4k(k-1).
long long upper_centrifugal_times4(HalfInt k);
/// Centrifugal coefficient of the decoupled f equation, k(k+1), exact on 4k(k+1).
long long lower_centrifugal_times4(HalfInt k);

/// Max-norm of (g', f') - radial_rhs over interior points, using sixth-order
/// central differences, divided by max(|g|, |f|).
double first_order_residual(const RadialSolution& solution, const PotentialSet& potentials);

}  // namespace planar_dirac
