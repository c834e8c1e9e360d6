#pragma once
// Closed-form spectra used only as test oracles.

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>

namespace oracle {

// Linear tensor potential U = omega rho, mass m:
// eps^2 - m^2 = omega (4n + 2|k - 1/2| + 1 - 2k).
inline double dirac_oscillator_e2m2(double k, int n, double omega = 1.0) {
  return omega * (4.0 * n + 2.0 * std::abs(k - 0.5) + 1.0 - 2.0 * k);
}

// eps^2 - m^2 = 2 sqrt(lambda (eps + sign m)) (2n + nu + 1); sign = +1 for the
// spin case (V_sigma = lambda rho^2, nu = |k - 1/2|), -1 for pseudospin
// (V_delta = lambda rho^2, nu = |k + 1/2|, positive-energy branch eps > m).
inline double harmonic_energy(double k, int n, double lambda, double m, int sign) {
  const double nu = sign > 0 ? std::abs(k - 0.5) : std::abs(k + 0.5);
  auto f = [&](double e) {
    return e * e - m * m - 2.0 * std::sqrt(lambda * (e + sign * m)) * (2.0 * n + nu + 1.0);
  };
  std::uintmax_t iters = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(52);
  const auto r = boost::math::tools::bisect(f, m + 1e-12, m + 100.0, tol, iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace oracle
