#include "planar_dirac/fd_oracle.hpp"

#include "planar_dirac/shooting.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

namespace planar_dirac {

SectorMatrix assemble(const QuantumNumbers& sector, const PotentialSet& p, double rho_max, int n) {
  if (n > max_oracle_nodes)
    throw OracleSizeError("oracle grid of " + std::to_string(n) + " nodes exceeds the limit of " +
                          std::to_string(max_oracle_nodes));
  if (n < 2) throw OracleSizeError("oracle grid needs at least 2 nodes");
  if (!(rho_max > 0.0)) throw std::invalid_argument("oracle rho_max must be positive");

  SectorMatrix m;
  m.sector = sector;
  m.rho_max = rho_max;
  m.n = n;
  m.h = std::sqrt(rho_max) / (n + 0.5);
  m.diagonal.assign(static_cast<std::size_t>(2 * n), 0.0);
  m.off_diagonal.assign(static_cast<std::size_t>(2 * n - 1), 0.0);

  const double k = sector.k.value();
  const double h = m.h;
  std::vector<double> weight(static_cast<std::size_t>(2 * n));
  for (int j = 0; j < n; ++j) {
    const double xf = m.f_node(j), xg = m.g_node(j);
    const double rf = xf * xf, rg = xg * xg;
    // Quadratic form of the energy functional with measure drho = 2x dx.
    weight[2 * j] = 2.0 * h * xf;
    weight[2 * j + 1] = 2.0 * h * xg;
    m.diagonal[2 * j] = -weight[2 * j] * (p.mass - p.delta.value(rf));
    m.diagonal[2 * j + 1] = weight[2 * j + 1] * (p.mass + p.sigma.value(rg));
    const double a = k / rf - (p.tensor.value(rf) + sector.s * p.phi.value(rf));
    m.off_diagonal[2 * j] = 1.0 - h * xf * a;                   // f_j - g_j
    if (j > 0) m.off_diagonal[2 * j - 1] = -1.0 - h * xf * a;  // g_{j-1} - f_j
  }
  for (std::size_t i = 0; i < m.diagonal.size(); ++i) m.diagonal[i] /= weight[i];
  for (std::size_t i = 0; i < m.off_diagonal.size(); ++i)
    m.off_diagonal[i] /= std::sqrt(weight[i] * weight[i + 1]);
  return m;
}

std::vector<double> dense(const SectorMatrix& m) {
  const auto n = m.diagonal.size();
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] = m.diagonal[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    a[i * n + i + 1] = m.off_diagonal[i];
    a[(i + 1) * n + i] = m.off_diagonal[i];
  }
  return a;
}

double oscillation_index(const std::vector<double>& v) {
  if (v.size() < 3) return 0.0;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const double d2 = v[i - 1] - 2.0 * v[i] + v[i + 1];
    num += d2 * d2;
  }
  for (double x : v) den += x * x;
  return den > 0.0 ? std::sqrt(num / den) / 4.0 : 0.0;
}

std::vector<OracleLevel> eigen_in_window(const SectorMatrix& m, std::pair<double, double> window) {
  const auto [lo, hi] = window;
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("oracle window must be finite");
  if (!(hi > lo)) return {};

  const lapack_int n = static_cast<lapack_int>(m.diagonal.size());
  std::vector<double> d = m.diagonal;
  std::vector<double> e = m.off_diagonal;
  e.push_back(0.0);  // dstevr uses a workspace slot past the end
  lapack_int found = 0;
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<lapack_int> support(static_cast<std::size_t>(2 * n));
  // Count first: dstevr writes one column of z per eigenvalue found, and the
  // count in a value range is not known in advance.
  double dummy_z = 0.0;
  auto run = [&](char jobz, double* z, lapack_int ldz) {
    std::vector<double> dd = d, ee = e;
    return LAPACKE_dstevr(LAPACK_COL_MAJOR, jobz, 'V', n, dd.data(), ee.data(), lo, hi, 0, 0, 0.0,
                          &found, w.data(), z, ldz, support.data());
  };
  lapack_int info = run('N', &dummy_z, 1);
  std::vector<double> z;
  if (info == 0 && found > 0) {
    const auto columns = std::min<std::size_t>(static_cast<std::size_t>(found) + 8, static_cast<std::size_t>(n));
    z.resize(static_cast<std::size_t>(n) * columns);
    info = run('V', z.data(), n);
    if (info == 0 && static_cast<std::size_t>(found) > columns) info = -1000;
  }
  if (info != 0) {
    double dmax = 0.0, emax = 0.0;
    for (double x : d) dmax = std::max(dmax, std::abs(x));
    for (double x : e) emax = std::max(emax, std::abs(x));
    throw EigensolverError("tridiagonal eigensolver failed (info " + std::to_string(info) +
                           ", max|diag| " + std::to_string(dmax) + ", max|offdiag| " +
                           std::to_string(emax) + ", order " + std::to_string(n) + ")");
  }

  std::vector<OracleLevel> levels;
  std::vector<double> g(static_cast<std::size_t>(m.n)), f(static_cast<std::size_t>(m.n));
  for (lapack_int c = 0; c < found; ++c) {
    const double* col = z.data() + static_cast<std::size_t>(c) * static_cast<std::size_t>(n);
    for (int j = 0; j < m.n; ++j) {
      // undo the symmetrization: amplitude = component / sqrt(weight)
      f[j] = col[2 * j] / std::sqrt(2.0 * m.h * m.f_node(j));
      g[j] = col[2 * j + 1] / std::sqrt(2.0 * m.h * m.g_node(j));
    }
    levels.push_back({w[static_cast<std::size_t>(c)], count_nodes(g), count_nodes(f), oscillation_index(g)});
  }
  return levels;
}

std::vector<OracleLevel> refined_levels(const QuantumNumbers& sector, const PotentialSet& potentials,
                                        double rho_max, std::pair<double, double> window, int n) {
  // Widen the coarse window slightly so levels near the edges still pair up.
  const double pad = 1e-3 * std::max(1.0, window.second - window.first);
  const auto coarse = eigen_in_window(assemble(sector, potentials, rho_max, n),
                                      {window.first - pad, window.second + pad});
  const auto fine = eigen_in_window(assemble(sector, potentials, rho_max, 2 * n), window);
  std::vector<OracleLevel> out;
  for (const auto& lf : fine) {
    const OracleLevel* best = nullptr;
    for (const auto& lc : coarse)
      if (!best || std::abs(lc.energy - lf.energy) < std::abs(best->energy - lf.energy)) best = &lc;
    if (!best || best->nodes != lf.nodes) continue;
    OracleLevel r = lf;
    r.energy = (4.0 * lf.energy - best->energy) / 3.0;
    out.push_back(r);
  }
  return out;
}

}  // namespace planar_dirac
