#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace planar_dirac {

enum class ProfileFamily { zero, constant, harmonic, linear, coulomb, woods_saxon };

std::string to_string(ProfileFamily f);
ProfileFamily parse_family(const std::string& name);

/// One analytic radial term. Parameter meaning per family:
///   constant(c): c; harmonic(lambda): lambda rho^2; linear(lambda): lambda rho;
///   coulomb(alpha): -alpha / rho; woods_saxon(V0, R, a): V0 / (1 + e^{(rho-R)/a}).
struct ProfileTerm {
  ProfileFamily family = ProfileFamily::zero;
  double p0 = 0.0;
  double p1 = 0.0;
  double p2 = 1.0;

  static ProfileTerm constant(double c) { return {ProfileFamily::constant, c}; }
  static ProfileTerm harmonic(double lambda) { return {ProfileFamily::harmonic, lambda}; }
  static ProfileTerm linear(double lambda) { return {ProfileFamily::linear, lambda}; }
  static ProfileTerm coulomb(double alpha) { return {ProfileFamily::coulomb, alpha}; }
  static ProfileTerm woods_saxon(double v0, double radius, double diffuseness);

  double value(double rho) const;
  double derivative(double rho) const;
  bool vanishes() const;
};

enum class Asymptote { vanishing, constant, confining, anticonfining };

/// A radial profile: pointwise sum of analytic terms.
class Profile {
public:
  Profile() = default;
  Profile(ProfileTerm term) { add(term); }  // NOLINT(google-explicit-constructor)

  Profile& add(const ProfileTerm& term);
  const std::vector<ProfileTerm>& terms() const { return terms_; }

  double value(double rho) const;
  double derivative(double rho) const;

  bool is_zero() const;
  bool is_constant() const;
  Asymptote asymptote() const;
  std::string describe() const;

  friend Profile operator+(Profile a, const Profile& b);
  friend Profile operator*(double factor, Profile p);

private:
  std::vector<ProfileTerm> terms_;
};

enum class PotentialComponent { sigma, delta, phi, tensor };

/// The circular potential quartet plus the mass (natural units).
/// sigma = V_v + V_s, delta = V_v - V_s, phi = azimuthal vector potential,
/// tensor = radial tensor potential U_rho.
struct PotentialSet {
  double mass = 1.0;
  Profile sigma;
  Profile delta;
  Profile phi;
  Profile tensor;

  const Profile& profile(PotentialComponent which) const;
  double evaluate(PotentialComponent which, double rho) const;

  double vector_part(double rho) const { return 0.5 * (evaluate(PotentialComponent::sigma, rho) + evaluate(PotentialComponent::delta, rho)); }
  double scalar_part(double rho) const { return 0.5 * (evaluate(PotentialComponent::sigma, rho) - evaluate(PotentialComponent::delta, rho)); }
};

class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

bool is_spin_symmetric(const PotentialSet& set);
bool is_pseudospin_symmetric(const PotentialSet& set);

}  // namespace planar_dirac
