#include "planar_dirac/radial_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace planar_dirac {

namespace {

struct LocalCoefficients {
  double a;  // k/rho - W
  double b;  // m + eps - V_delta
  double c;  // m - eps + V_sigma
};

double tensor_like(double rho, const QuantumNumbers& q, const PotentialSet& p) {
  return p.tensor.value(rho) + q.s * p.phi.value(rho);
}

double tensor_like_derivative(double rho, const QuantumNumbers& q, const PotentialSet& p) {
  return p.tensor.derivative(rho) + q.s * p.phi.derivative(rho);
}

LocalCoefficients coefficients(double rho, const QuantumNumbers& q, double eps,
                               const PotentialSet& p) {
  const double k = q.k.value();
  return {k / rho - tensor_like(rho, q, p), p.mass + eps - p.delta.value(rho),
          p.mass - eps + p.sigma.value(rho)};
}

std::string format_energy(double e) {
  std::ostringstream os;
  os.precision(12);
  os << e;
  return os.str();
}

void normalize(RadialSolution& sol) {
  std::vector<double> density(sol.g.size());
  for (std::size_t i = 0; i < density.size(); ++i) density[i] = sol.g[i] * sol.g[i] + sol.f[i] * sol.f[i];
  const double norm = std::sqrt(sol.grid.integrate(density));
  for (auto& x : sol.g) x /= norm;
  for (auto& x : sol.f) x /= norm;
  for (std::size_t i = 0; i < density.size(); ++i) density[i] = sol.g[i] * sol.g[i] + sol.f[i] * sol.f[i];
  sol.norm_residual = std::abs(sol.grid.integrate(density) - 1.0);
}

/// Shared tail of both solvers: builds labelled, normalized solutions from
/// matched (g, f) pairs and applies the node filter and ordering checks.
BoundStateSearch collect(const QuantumNumbers& sector, const PotentialSet& potentials,
                         const RadialGrid& grid, const std::vector<RadialSolution>& raw,
                         const BoundStateOptions& options, std::vector<std::string> warnings) {
  BoundStateSearch out;
  out.warnings = std::move(warnings);
  for (auto sol : raw) {
    if (sol.match_residual > 1e-6) {
      out.warnings.push_back("discarded spurious sign change near eps = " +
                             format_energy(sol.energy) + " (mismatch " +
                             format_energy(sol.match_residual) + ")");
      continue;
    }
    normalize(sol);
    sol.n = count_nodes(sol.g);
    sol.n_lower = count_nodes(sol.f);
    const int label = options.label == NodeLabel::upper ? sol.n : sol.n_lower;
    if (label > options.max_nodes) continue;
    out.solutions.push_back(std::move(sol));
  }
  std::sort(out.solutions.begin(), out.solutions.end(),
            [](const auto& a, const auto& b) { return a.energy < b.energy; });

  for (std::size_t i = 1; i < out.solutions.size(); ++i) {
    const auto& lo = out.solutions[i - 1];
    const auto& hi = out.solutions[i];
    const int nl = options.label == NodeLabel::upper ? lo.n : lo.n_lower;
    const int nh = options.label == NodeLabel::upper ? hi.n : hi.n_lower;
    if (lo.energy > 0.0 && nh <= nl)
      out.warnings.push_back("node ordering violated between eps = " + format_energy(lo.energy) +
                             " and " + format_energy(hi.energy) + " (possible missed root)");
  }

  for (const auto& sol : out.solutions) {
    const double b_in = coefficients(grid.at(0), sector, sol.energy, potentials).b;
    const double b_out = coefficients(grid.rho_max(), sector, sol.energy, potentials).b;
    if ((b_in > 0.0) != (b_out > 0.0)) {
      out.warnings.push_back(
          "m + eps - V_delta changes sign across the grid (removable singularity of the "
          "second-order form; the first-order system is regular there)");
      break;
    }
  }
  return out;
}

}  // namespace

std::pair<double, double> radial_rhs(double rho, double g, double f, const QuantumNumbers& sector,
                                     double eps, const PotentialSet& potentials) {
  if (!(rho > 0.0)) throw DomainError("radial_rhs requires rho > 0");
  const auto c = coefficients(rho, sector, eps, potentials);
  return {c.a * g + c.b * f, -c.a * f + c.c * g};
}

LinearSystem dirac_radial_system(const QuantumNumbers& sector, const PotentialSet& potentials) {
  LinearSystem sys;
  sys.matrix = [sector, potentials](double rho, double eps) {
    const auto c = coefficients(rho, sector, eps, potentials);
    Eigen::Matrix2d a;
    a << c.a, c.b, c.c, -c.a;
    return a;
  };
  sys.origin_seed = [sector, potentials](double rho, double eps) {
    const double k = sector.k.value();
    const auto c = coefficients(rho, sector, eps, potentials);
    // g ~ rho^k, f ~ c rho^{k+1}/(2k+1) for k > 0; f ~ rho^{-k}, g ~ b rho^{1-k}/(1-2k) otherwise.
    if (k > 0) return Eigen::Vector2d(1.0, c.c * rho / (2.0 * k + 1.0));
    return Eigen::Vector2d(c.b * rho / (1.0 - 2.0 * k), 1.0);
  };
  return sys;
}

double effective_potential(double rho, const QuantumNumbers& sector, double eps,
                           const PotentialSet& p) {
  const double k = sector.k.value();
  const double w = tensor_like(rho, sector, p);
  const double dw = tensor_like_derivative(rho, sector, p);
  const double vs = p.sigma.value(rho);
  const double vd = p.delta.value(rho);
  return k * (k - 1.0) / (rho * rho) - dw - 2.0 * k * w / rho + w * w + (eps + p.mass) * vs +
         (eps - p.mass) * vd - vs * vd;
}

int choose_match_index(const RadialGrid& grid, const QuantumNumbers& sector, double eps,
                       const PotentialSet& potentials) {
  const int lo = std::max(1, grid.index_of(grid.rho_max() / 50.0));
  const int hi = std::min(grid.size() - 2, grid.index_of(0.9 * grid.rho_max()));
  int best = lo;
  double best_value = effective_potential(grid.at(lo), sector, eps, potentials);
  for (int i = lo + 1; i <= hi; ++i) {
    const double v = effective_potential(grid.at(i), sector, eps, potentials);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  if (best >= hi) return grid.index_of(grid.rho_max() / 3.0);
  return best;
}

double decay_radius(const QuantumNumbers& sector, double eps, const PotentialSet& potentials,
                    double decay) {
  constexpr double step = 1e-2;
  constexpr double cap = 1e3;
  double accumulated = 0.0;
  for (double rho = step; rho < cap; rho += step) {
    const auto c = coefficients(rho, sector, eps, potentials);
    const double kappa2 = c.a * c.a + c.b * c.c;
    if (kappa2 <= 0.0) {
      accumulated = 0.0;
      continue;
    }
    accumulated += std::sqrt(kappa2) * step;
    if (accumulated >= decay) return rho;
  }
  return cap;
}

Trajectory integrate(Direction direction, const QuantumNumbers& sector, double eps,
                     const PotentialSet& potentials, const RadialGrid& grid,
                     const ShootingOptions& opt) {
  const auto sys = dirac_radial_system(sector, potentials);
  const int last = grid.size() - 1;
  if (direction == Direction::outward)
    return integrate_between(sys, eps, grid, 0, last, sys.origin_seed(grid.at(0), eps), opt);
  const auto seed = decaying_seed(sys.matrix(grid.at(last), eps));
  if (!seed) throw IntegrationError("no decaying solution at rho_max for this energy");
  return integrate_between(sys, eps, grid, last, 0, *seed, opt);
}

BoundStateSearch find_bound_states(const QuantumNumbers& sector, const PotentialSet& potentials,
                                   std::pair<double, double> window, const RadialGrid& grid,
                                   const BoundStateOptions& options) {
  const auto [lo, hi] = window;
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("energy window must be finite");
  const int match = choose_match_index(grid, sector, 0.5 * (lo + hi), potentials);
  const ShootingEngine engine(dirac_radial_system(sector, potentials), grid, match,
                              options.shooting);

  std::vector<RadialSolution> raw;
  for (double eps : engine.find_roots(lo, hi, options.max_nodes + 1)) {
    const auto m = engine.matched(eps);
    raw.push_back({sector, 0, 0, eps, grid, m.u, m.v, 0.0, std::abs(m.mismatch)});
  }
  return collect(sector, potentials, grid, raw, options, {});
}

BoundStateSearch second_order_solve(const QuantumNumbers& sector, const PotentialSet& potentials,
                                    DecoupledComponent which, std::pair<double, double> window,
                                    const RadialGrid& grid, const BoundStateOptions& options) {
  const bool upper = which == DecoupledComponent::upper_g;
  if (upper && !is_spin_symmetric(potentials))
    throw SymmetryConditionError(
        "upper-component equation couples to f through dV_delta/drho unless V_delta is "
        "constant and V_phi = U_rho = 0");
  if (!upper && !is_pseudospin_symmetric(potentials))
    throw SymmetryConditionError(
        "lower-component equation couples to g through dV_sigma/drho unless V_sigma is "
        "constant and V_phi = U_rho = 0");

  const double k = sector.k.value();
  const double centrifugal = upper ? k * (k - 1.0) : k * (k + 1.0);
  const double nu = upper ? std::max(k, 1.0 - k) : std::max(k + 1.0, -k);
  const double w_sign = upper ? -1.0 : 1.0;

  LinearSystem sys;
  sys.matrix = [=](double rho, double eps) {
    const auto c = coefficients(rho, sector, eps, potentials);
    const double w = tensor_like(rho, sector, potentials);
    const double dw = tensor_like_derivative(rho, sector, potentials);
    const double q = centrifugal / (rho * rho) + w_sign * dw - 2.0 * k * w / rho + w * w + c.b * c.c;
    Eigen::Matrix2d a;
    a << 0.0, 1.0, q, 0.0;
    return a;
  };
  // rho^nu (1 + c rho^2) with c from the regular part of q; for k = 1/2 (g) or
  // k = -1/2 (f) the indicial roots coincide and the rho^nu log(rho) companion
  // is normalizable, so the leading term alone biases the energy.
  sys.origin_seed = [=, matrix = sys.matrix](double rho, double eps) {
    const double q = matrix(rho, eps)(1, 0) - centrifugal / (rho * rho);
    const double c = q / (4.0 * nu + 2.0);
    const double r2 = rho * rho;
    return Eigen::Vector2d(rho * (1.0 + c * r2), nu * (1.0 + c * r2) + 2.0 * c * r2);
  };

  const auto [lo, hi] = window;
  const int match = choose_match_index(grid, sector, 0.5 * (lo + hi), potentials);
  const ShootingEngine engine(sys, grid, match, options.shooting);

  std::vector<RadialSolution> raw;
  std::vector<std::string> warnings;
  for (double eps : engine.find_roots(lo, hi, options.max_nodes + 1)) {
    const auto m = engine.matched(eps);
    RadialSolution sol{sector, 0, 0, eps, grid, {}, {}, 0.0, std::abs(m.mismatch)};
    const auto n = static_cast<std::size_t>(grid.size());
    sol.g.resize(n);
    sol.f.resize(n);
    bool singular = false;
    for (std::size_t i = 0; i < n; ++i) {
      const double rho = grid.at(static_cast<int>(i));
      const auto c = coefficients(rho, sector, eps, potentials);
      const double denom = upper ? c.b : c.c;
      if (denom == 0.0) {
        singular = true;
        break;
      }
      if (upper) {
        sol.g[i] = m.u[i];
        sol.f[i] = (m.v[i] - c.a * m.u[i]) / c.b;
      } else {
        sol.f[i] = m.u[i];
        sol.g[i] = (m.v[i] + c.a * m.u[i]) / c.c;
      }
    }
    if (singular) {
      warnings.push_back("companion amplitude undefined at eps = " + format_energy(eps));
      continue;
    }
    raw.push_back(std::move(sol));
  }
  return collect(sector, potentials, grid, raw, options, std::move(warnings));
}

long long upper_centrifugal_times4(HalfInt k) {
  const long long t = k.twice();
  return t * (t - 2);
}

long long lower_centrifugal_times4(HalfInt k) {
  const long long t = k.twice();
  return t * (t + 2);
}

double first_order_residual(const RadialSolution& sol, const PotentialSet& potentials) {
  const auto& grid = sol.grid;
  const int n = grid.size();
  const double h = grid.step();
  const int first = std::max(3, grid.index_of(0.05 * grid.rho_max()));
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max({scale, std::abs(sol.g[i]), std::abs(sol.f[i])});
  auto d6 = [h](const std::vector<double>& y, int i) {
    return (-y[i - 3] + 9.0 * y[i - 2] - 45.0 * y[i - 1] + 45.0 * y[i + 1] - 9.0 * y[i + 2] +
            y[i + 3]) /
           (60.0 * h);
  };
  double worst = 0.0;
  for (int i = first; i < n - 3; ++i) {
    const auto [dg, df] = radial_rhs(grid.at(i), sol.g[i], sol.f[i], sol.sector, sol.energy, potentials);
    worst = std::max({worst, std::abs(d6(sol.g, i) - dg), std::abs(d6(sol.f, i) - df)});
  }
  return worst / scale;
}

}  // namespace planar_dirac
