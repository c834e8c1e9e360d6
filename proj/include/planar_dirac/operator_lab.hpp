#pragma once

#include "planar_dirac/angular_basis.hpp"
#include "planar_dirac/dirac_matrices.hpp"
#include "planar_dirac/potentials.hpp"
#include "planar_dirac/quantum_numbers.hpp"
#include "planar_dirac/radial_solver.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace planar_dirac {

/// Where a SpectralState lives.
///  spinor_orbital:  C^4 (x) C^{2 l_orb + 1}, orbital L as spin-l_orb matrices
///  momentum_circle: one momentum shell |p| = const, 4 x n_angles samples
///  momentum_polar:  several momentum shells with radial weights
///  position_polar:  several radii with radial weights
enum class Space { spinor_orbital, momentum_circle, momentum_polar, position_polar };

std::string to_string(Space s);

/// A complex field: one 4 x columns block per shell (a single block for the
/// spinor-orbital space and the momentum circle). Columns are angle samples,
/// or orbital magnetic indices m = -l_orb..l_orb for spinor_orbital.
struct SpectralState {
  Space space = Space::momentum_circle;
  AngularGrid grid{64};
  int orbital_l = 0;
  std::vector<double> radii;           // shell radii (|p| or rho); empty for single-block spaces
  std::vector<double> radial_weights;  // quadrature weights matching radii
  std::vector<Eigen::MatrixXcd> blocks;

  bool angular() const { return space != Space::spinor_orbital; }
  bool momentum() const { return space == Space::momentum_circle || space == Space::momentum_polar; }
  SpectralState zeros_like() const;
};

class RepresentationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

cd inner(const SpectralState& a, const SpectralState& b);
double norm(const SpectralState& a);
SpectralState operator+(SpectralState a, const SpectralState& b);
SpectralState operator-(SpectralState a, const SpectralState& b);
SpectralState operator*(cd factor, SpectralState a);
SpectralState normalized(SpectralState a);
/// |<a, b>| / (|a| |b|)
double overlap(const SpectralState& a, const SpectralState& b);

/// Random unit state: complex normal entries; angular spaces keep only
/// Fourier modes |l| <= band_limit so products with p-hat stay resolved.
SpectralState random_state(Space space, std::uint64_t seed, int band_limit = 8, int n_angles = 64,
                           int orbital_l = 2);

enum class OpKind { constant_matrix, angular_multiplicative, spectral_derivative, radial_derivative, composite };

struct OperatorRep {
  std::string name;
  OpKind kind = OpKind::composite;
  bool needs_momentum = false;
  std::function<SpectralState(const SpectralState&)> action;

  SpectralState operator()(const SpectralState& s) const;
};

OperatorRep constant(const std::string& name, const Mat4& m);
OperatorRep identity_op();
OperatorRep zero_op();
OperatorRep product(const OperatorRep& a, const OperatorRep& b);  // a after b
OperatorRep sum(const OperatorRep& a, const OperatorRep& b);
OperatorRep scaled(cd factor, const OperatorRep& a);
OperatorRep commutator(const OperatorRep& a, const OperatorRep& b);
OperatorRep anticommutator(const OperatorRep& a, const OperatorRep& b);

/// Orbital L_z (spectral -i d/dtheta on angular spaces); L_x, L_y exist only
/// on the spinor-orbital space.
OperatorRep orbital_l(int axis);

OperatorRep op_S(int axis);       // beta Sigma_i
OperatorRep op_Lcal(int axis);    // L_i + P_- Sigma_i
OperatorRep op_Jz();              // L_z + Sigma_z / 2
OperatorRep op_K();               // beta (L_z Sigma_z + 1/2)
OperatorRep op_O(int axis);       // S_i - 2 p_i (S . p) P_-, p unit momentum
OperatorRep op_Otilde(int axis);  // gamma5 O_i gamma5
OperatorRep op_O_ladder(int s);   // O_x + i s O_y
OperatorRep op_Otilde_ladder(int s);
OperatorRep op_gamma5();

/// Names: Sz, S_x|S_y|S_z, Lz_gen, L_x|L_y|L_z (modified orbital), Jz, K,
/// O_x.., Otilde_x.., O_ladder(+1|-1), Otilde_ladder(+1|-1), gamma5.
OperatorRep build_generator(const std::string& name);

OperatorRep conjugate_gamma5(const OperatorRep& g);

// ---- claims -------------------------------------------------------------

enum class ClaimForm { commutator, anticommutator, identity, hermitian };

/// One relation: commutator [A,B] = C, anticommutator {A,B} = C, A = C, or
/// hermiticity of A. expect_hold = false marks a variant that is recorded to
/// demonstrate that it fails.
struct Claim {
  std::string id;
  std::string lhs;
  std::string rhs;
  ClaimForm form = ClaimForm::identity;
  Space space = Space::momentum_circle;
  OperatorRep a;
  OperatorRep b;
  OperatorRep c;
  bool expect_hold = true;
};

struct AlgebraOptions {
  std::vector<std::uint64_t> seeds;  // default: 1..20
  int trials = 4;
  int n_angles = 64;
  int band_limit = 8;
  int orbital_l = 2;
  double tolerance = 1e-10;
  bool inject_wrong_claim = false;
};

/// The full table of generator relations. `vector_seed` fixes the random
/// real vectors used by the (alpha.A)(alpha.B) identity.
std::vector<Claim> claims_table(std::uint64_t vector_seed, bool inject_wrong_claim = false);

double commutator_residual(const OperatorRep& a, const OperatorRep& b, const OperatorRep& claim,
                           Space space, std::uint64_t seed, int trials, const AlgebraOptions& opt = {});
double anticommutator_residual(const OperatorRep& a, const OperatorRep& b, const OperatorRep& claim,
                               Space space, std::uint64_t seed, int trials, const AlgebraOptions& opt = {});
double claim_residual(const Claim& claim, std::uint64_t seed, const AlgebraOptions& opt);

struct ClaimRecord {
  std::string claim_id;
  std::string lhs;
  std::string rhs;
  double residual = 0.0;  // worst over seeds
  double tolerance = 0.0;
  bool expect_hold = true;
  bool pass = false;  // residual <= tol when expected to hold, > tol otherwise
  std::uint64_t seed = 0;  // seed of the worst residual
};

struct AlgebraReport {
  std::vector<ClaimRecord> records;
  std::vector<std::uint64_t> seeds;
  bool all_pass = true;
};

AlgebraReport verify_algebra(const AlgebraOptions& opt);

/// Adjudication of the relations whose source form and computed form differ.
struct Finding {
  std::string topic;
  std::string verdict;
  std::vector<std::pair<std::string, double>> residuals;
};

/// Anticommutator factor, S-variant, modified-orbital commutator and the
/// sigma_rho index map (evaluated directly on sampled harmonics, |l| <= 4).
std::vector<Finding> algebra_findings(const AlgebraReport& report);

// ---- sector states, Hamiltonian closure, ladders --------------------------

/// Position-space state rho^{-1/2} (i g h_{l,s}, f h_{l+s,-s}) on the given radii.
SpectralState sector_state(const QuantumNumbers& q, const std::vector<double>& radii,
                           const std::vector<double>& weights, const std::function<double(double)>& g,
                           const std::function<double(double)>& f, int n_angles = 32);

/// |G psi - lambda psi| / |psi|
double eigen_residual(const OperatorRep& g, const SpectralState& psi, double lambda);

struct ClosureOptions {
  double rho_max = 6.0;
  int n_radial = 400;
  int n_angles = 32;
  double phi_perturbation = 0.0;  // eta: adds eta rho cos(phi) to V_sigma and V_delta
};

/// Applies H (radial sixth-order differences, spectral angle) to the sector
/// state built from g and f, and returns the relative norm of everything
/// outside the sector's two harmonics.
double hamiltonian_sector_closure(const PotentialSet& potentials, const QuantumNumbers& sector,
                                  const std::function<double(double)>& g,
                                  const std::function<double(double)>& f,
                                  const ClosureOptions& opt = {});

/// ||H psi - eps psi|| / ||psi|| for the 2D spinor built from a radial
/// solution, over radii rho_from .. rho_max. Checks that the radial system and
/// the planar Hamiltonian describe the same operator.
double hamiltonian_eigen_residual(const PotentialSet& potentials, const RadialSolution& solution,
                                  double rho_from = 0.05, int n_angles = 16);

struct MomentumGridOptions {
  double p_max = 12.0;
  int n_p = 240;
  int n_angles = 32;
};

/// Momentum-space image of a radial eigenstate via order-l Hankel transforms.
SpectralState to_momentum(const RadialSolution& sol, const MomentumGridOptions& opt = {});

enum class LadderKind { spin, pseudospin };

struct LadderResult {
  SpectralState source;
  SpectralState image;  // unnormalized
  QuantumNumbers target;
  double image_norm = 0.0;
  bool annihilated = false;  // image norm below 1e-12 of the source
};

/// Spin: O_{-s} Psi_{k,mj,s} -> sector (-k+1, mj-s). Pseudospin:
/// Otilde_{+s} Psi_{k,mj,s} -> sector (-k-1, mj+s). Throws
/// SymmetryConditionError when the potentials lack the symmetry.
LadderResult ladder_apply(const RadialSolution& sol, const PotentialSet& potentials, LadderKind kind,
                          const MomentumGridOptions& opt = {});

}  // namespace planar_dirac
