#pragma once

#include "planar_dirac/potentials.hpp"
#include "planar_dirac/quantum_numbers.hpp"
#include "planar_dirac/radial_solver.hpp"

#include <nlohmann/json.hpp>

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace planar_dirac {

/// (k, mj, s) -> (-k+1, mj-s, -s). Involutive.
QuantumNumbers spin_partner(const QuantumNumbers& q);
/// (k, mj, s) -> (-k-1, mj+s, -s), the gamma5 image of the spin map. Involutive.
QuantumNumbers pseudospin_partner(const QuantumNumbers& q);

enum class SymmetryMode { spin, pseudospin };
std::string to_string(SymmetryMode m);
SymmetryMode parse_mode(const std::string& s);

struct SectorSpectrum {
  QuantumNumbers sector;
  double rho_max = 0.0;
  int grid_points = 0;
  std::vector<RadialSolution> states;
};

struct PairRecord {
  QuantumNumbers a;
  QuantumNumbers b;
  int n = 0;  // shared node count: g for spin, f for pseudospin
  double eps_a = 0.0;
  double eps_b = 0.0;
  double abs_delta = 0.0;
  bool pass = false;
  double ladder_overlap = std::numeric_limits<double>::quiet_NaN();
};

struct DegeneracyOptions {
  SymmetryMode mode = SymmetryMode::spin;
  std::pair<double, double> window{1.0, 8.0};
  int max_nodes = 4;
  double tol = 1e-8;          // relative to max(|eps_a|, |eps_b|)
  double rho_max = 0.0;       // 0: chosen from the decay length at the window top
  int grid_points = 2000;
  bool require_symmetry = true;
  bool negative_control = true;
  // adds control_strength * lambda rho^2 to the other combination. Negative so the
  // broken problem stays confining: a positive term lets bc -> -inf at large rho.
  double control_strength = -0.2;
  double control_lift = 1e-3;
  bool ladder_overlaps = false;
  std::string config_digest;
};

struct SpectrumReport {
  std::string config_digest;
  SymmetryMode mode = SymmetryMode::spin;
  bool symmetric = true;  // symmetry predicate of the input potentials
  std::vector<SectorSpectrum> sectors;
  std::vector<PairRecord> pairs;
  int unpaired = 0;
  std::vector<PairRecord> control_pairs;
  double control_min_delta = std::numeric_limits<double>::quiet_NaN();
  bool control_lifted = true;
  std::vector<std::string> warnings;
  bool all_pass = false;
};

/// Solves each sector in one spectrum run on a shared grid.
std::vector<SectorSpectrum> solve_sectors(const PotentialSet& potentials, const std::vector<QuantumNumbers>& sectors,
                                          std::pair<double, double> window, int max_nodes, NodeLabel label,
                                          double rho_max, int grid_points, std::vector<std::string>& warnings);

/// Solves the listed sectors and their partners, pairs states by node count
/// and checks |eps_a - eps_b| <= tol max(|eps_a|, |eps_b|). Throws
/// SymmetryConditionError when the predicate fails and require_symmetry is set.
SpectrumReport verify_degeneracy(const PotentialSet& potentials, const std::vector<QuantumNumbers>& sectors,
                                 const DegeneracyOptions& opt);

nlohmann::json to_json(const SpectrumReport& r);
/// k_a, mj_a, k_b, mj_b, n, eps_a, eps_b, abs_delta, pass
std::string pairs_csv(const SpectrumReport& r, bool control = false);

/// 17 significant digits, '.' separator, independent of locale.
std::string format_real(double x);

}  // namespace planar_dirac
