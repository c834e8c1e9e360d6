#pragma once

#include "planar_dirac/potentials.hpp"
#include "planar_dirac/quantum_numbers.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace planar_dirac {

/// Finite-difference discretization of the coupled radial system in the
/// variable x = sqrt(rho) on [0, sqrt(rho_max)]. g lives on x_i = i h
/// (i = 1..N), f on x_j = (j - 1/2) h; both vanish at x = 0 and beyond the
/// last node. In the interleaved order (f_1, g_1, f_2, g_2, ...) the
/// symmetrized operator is tridiagonal.
struct SectorMatrix {
  QuantumNumbers sector;
  double rho_max = 0.0;
  int n = 0;  // nodes per component; the matrix is 2n x 2n
  double h = 0.0;
  std::vector<double> diagonal;      // 2n entries
  std::vector<double> off_diagonal;  // 2n - 1 entries

  double g_node(int i) const { return (i + 1) * h; }  // x of g_{i+1}
  double f_node(int j) const { return (j + 0.5) * h; }
};

class OracleSizeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class EigensolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr int max_oracle_nodes = 2000;

/// Throws OracleSizeError for n > 2000 or n < 2.
SectorMatrix assemble(const QuantumNumbers& sector, const PotentialSet& potentials, double rho_max,
                      int n);

struct OracleLevel {
  double energy = 0.0;
  int nodes = 0;        // sign changes of the g part
  int lower_nodes = 0;  // sign changes of the f part
  double oscillation = 0.0;  // grid-scale content of the g part, 0 smooth .. 1 alternating
};

/// All eigenvalues in [lo, hi], ascending, with eigenvector diagnostics.
std::vector<OracleLevel> eigen_in_window(const SectorMatrix& m, std::pair<double, double> window);

/// Dense 2n x 2n symmetric matrix in the interleaved order (for inspection).
std::vector<double> dense(const SectorMatrix& m);

/// Richardson-extrapolated levels from n and 2n nodes (second-order scheme).
/// Levels are paired by nearest energy; unpaired ones are dropped.
std::vector<OracleLevel> refined_levels(const QuantumNumbers& sector, const PotentialSet& potentials,
                                        double rho_max, std::pair<double, double> window,
                                        int n = 1000);

/// ||second difference|| / (4 ||v||): about 1 for a grid-scale alternation,
/// O(h^2) for a smooth vector.
double oscillation_index(const std::vector<double>& v);

}  // namespace planar_dirac
