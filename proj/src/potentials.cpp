#include "planar_dirac/potentials.hpp"

#include <cmath>
#include <sstream>

namespace planar_dirac {

std::string to_string(ProfileFamily f) {
  switch (f) {
    case ProfileFamily::zero: return "zero";
    case ProfileFamily::constant: return "constant";
    case ProfileFamily::harmonic: return "harmonic";
    case ProfileFamily::linear: return "linear";
    case ProfileFamily::coulomb: return "coulomb";
    case ProfileFamily::woods_saxon: return "woods_saxon";
  }
  return "?";
}

ProfileFamily parse_family(const std::string& name) {
  for (auto f : {ProfileFamily::zero, ProfileFamily::constant, ProfileFamily::harmonic,
                 ProfileFamily::linear, ProfileFamily::coulomb, ProfileFamily::woods_saxon})
    if (to_string(f) == name) return f;
  throw std::invalid_argument("unknown profile family '" + name + "'");
}

ProfileTerm ProfileTerm::woods_saxon(double v0, double radius, double diffuseness) {
  if (!(diffuseness > 0.0)) throw std::invalid_argument("woods_saxon diffuseness must be > 0");
  return {ProfileFamily::woods_saxon, v0, radius, diffuseness};
}

double ProfileTerm::value(double rho) const {
  switch (family) {
    case ProfileFamily::zero: return 0.0;
    case ProfileFamily::constant: return p0;
    case ProfileFamily::harmonic: return p0 * rho * rho;
    case ProfileFamily::linear: return p0 * rho;
    case ProfileFamily::coulomb: return -p0 / rho;
    case ProfileFamily::woods_saxon: {
      const double t = (rho - p1) / p2;
      // e^{-t}/(1+e^{-t}) form avoids overflow for large t.
      return t > 0.0 ? p0 * std::exp(-t) / (1.0 + std::exp(-t)) : p0 / (1.0 + std::exp(t));
    }
  }
  return 0.0;
}

double ProfileTerm::derivative(double rho) const {
  switch (family) {
    case ProfileFamily::zero:
    case ProfileFamily::constant: return 0.0;
    case ProfileFamily::harmonic: return 2.0 * p0 * rho;
    case ProfileFamily::linear: return p0;
    case ProfileFamily::coulomb: return p0 / (rho * rho);
    case ProfileFamily::woods_saxon: {
      const double e = std::exp(-std::abs(rho - p1) / p2);
      // d/drho V0/(1+e^t) = -V0 e^t / (a (1+e^t)^2), symmetric in the sign of t.
      return -p0 * e / (p2 * (1.0 + e) * (1.0 + e));
    }
  }
  return 0.0;
}

bool ProfileTerm::vanishes() const {
  return family == ProfileFamily::zero || p0 == 0.0;
}

Profile& Profile::add(const ProfileTerm& term) {
  if (!term.vanishes()) terms_.push_back(term);
  return *this;
}

double Profile::value(double rho) const {
  double v = 0.0;
  for (const auto& t : terms_) v += t.value(rho);
  return v;
}

double Profile::derivative(double rho) const {
  double d = 0.0;
  for (const auto& t : terms_) d += t.derivative(rho);
  return d;
}

bool Profile::is_zero() const { return terms_.empty(); }

bool Profile::is_constant() const {
  for (const auto& t : terms_)
    if (t.family != ProfileFamily::constant) return false;
  return true;
}

Asymptote Profile::asymptote() const {
  double quadratic = 0.0, linear = 0.0;
  bool has_constant = false;
  for (const auto& t : terms_) {
    if (t.family == ProfileFamily::harmonic) quadratic += t.p0;
    if (t.family == ProfileFamily::linear) linear += t.p0;
    if (t.family == ProfileFamily::constant) has_constant = true;
  }
  const double lead = quadratic != 0.0 ? quadratic : linear;
  if (lead > 0.0) return Asymptote::confining;
  if (lead < 0.0) return Asymptote::anticonfining;
  return has_constant ? Asymptote::constant : Asymptote::vanishing;
}

std::string Profile::describe() const {
  if (terms_.empty()) return "zero";
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (i) os << " + ";
    os << to_string(t.family) << '(' << t.p0;
    if (t.family == ProfileFamily::woods_saxon) os << ", " << t.p1 << ", " << t.p2;
    os << ')';
  }
  return os.str();
}

Profile operator+(Profile a, const Profile& b) {
  for (const auto& t : b.terms_) a.add(t);
  return a;
}

Profile operator*(double factor, Profile p) {
  Profile out;
  for (auto t : p.terms_) {
    t.p0 *= factor;
    out.add(t);
  }
  return out;
}

const Profile& PotentialSet::profile(PotentialComponent which) const {
  switch (which) {
    case PotentialComponent::sigma: return sigma;
    case PotentialComponent::delta: return delta;
    case PotentialComponent::phi: return phi;
    case PotentialComponent::tensor: return tensor;
  }
  return sigma;
}

double PotentialSet::evaluate(PotentialComponent which, double rho) const {
  if (!(rho > 0.0)) throw DomainError("potentials are defined for rho > 0");
  return profile(which).value(rho);
}

bool is_spin_symmetric(const PotentialSet& set) {
  return set.delta.is_constant() && set.phi.is_zero() && set.tensor.is_zero();
}

bool is_pseudospin_symmetric(const PotentialSet& set) {
  return set.sigma.is_constant() && set.phi.is_zero() && set.tensor.is_zero();
}

}  // namespace planar_dirac
