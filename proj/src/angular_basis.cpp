#include "planar_dirac/angular_basis.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace planar_dirac {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<cd> row_to_vector(const Eigen::MatrixXcd& m, Eigen::Index r) {
  std::vector<cd> v(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) v[static_cast<std::size_t>(j)] = m(r, j);
  return v;
}

}  // namespace

AngularGrid::AngularGrid(int n_angles) : n_(n_angles) {
  if (n_angles < 8 || !is_power_of_two(n_angles))
    throw std::invalid_argument("angular grid size must be a power of two >= 8, got " +
                                std::to_string(n_angles));
}

double AngularGrid::angle(int j) const { return two_pi * j / n_; }

double AngularGrid::weight() const { return two_pi / n_; }

SpinorField::SpinorField(AngularGrid g, int components)
    : grid(g), values(Eigen::MatrixXcd::Zero(components, g.size())) {}

Eigen::Vector2cd eval_h(int l, int s, double phi) {
  const cd phase = std::polar(1.0 / std::sqrt(two_pi), l * phi);
  Eigen::Vector2cd out = Eigen::Vector2cd::Zero();
  out(s > 0 ? 0 : 1) = phase;
  return out;
}

SpinorField sample_h(int l, int s, const AngularGrid& grid) {
  SpinorField f(grid, 2);
  for (int j = 0; j < grid.size(); ++j) f.values.col(j) = eval_h(l, s, grid.angle(j));
  return f;
}

cd inner_product(const SpinorField& a, const SpinorField& b) {
  if (!(a.grid == b.grid) || a.components() != b.components())
    throw GridMismatch("inner_product: fields live on different grids");
  return a.grid.weight() * (a.values.conjugate().cwiseProduct(b.values)).sum();
}

SpinorField apply_sigma_rho(const SpinorField& field) {
  if (field.components() != 2) throw std::invalid_argument("sigma_rho acts on 2-spinors");
  SpinorField out(field.grid, 2);
  for (int j = 0; j < field.grid.size(); ++j) {
    const double phi = field.grid.angle(j);
    out.values(0, j) = std::polar(1.0, -phi) * field.values(1, j);
    out.values(1, j) = std::polar(1.0, phi) * field.values(0, j);
  }
  return out;
}

CircularHarmonic sigma_rho_image(CircularHarmonic h) { return {h.l + h.s, -h.s}; }

Eigen::MatrixXcd angular_modes(const Eigen::MatrixXcd& samples) {
  Eigen::FFT<double> fft;
  const auto n = samples.cols();
  const double scale = std::sqrt(two_pi) / static_cast<double>(n);
  Eigen::MatrixXcd out(samples.rows(), n);
  std::vector<cd> spectrum;
  for (Eigen::Index r = 0; r < samples.rows(); ++r) {
    fft.fwd(spectrum, row_to_vector(samples, r));
    for (Eigen::Index j = 0; j < n; ++j) out(r, j) = scale * spectrum[static_cast<std::size_t>(j)];
  }
  return out;
}

Eigen::MatrixXcd angular_samples(const Eigen::MatrixXcd& modes) {
  Eigen::FFT<double> fft;
  const auto n = modes.cols();
  const double scale = static_cast<double>(n) / std::sqrt(two_pi);
  Eigen::MatrixXcd out(modes.rows(), n);
  std::vector<cd> values;
  for (Eigen::Index r = 0; r < modes.rows(); ++r) {
    fft.inv(values, row_to_vector(modes, r));
    for (Eigen::Index j = 0; j < n; ++j) out(r, j) = scale * values[static_cast<std::size_t>(j)];
  }
  return out;
}

Eigen::MatrixXcd spectral_lz(const Eigen::MatrixXcd& samples) {
  Eigen::MatrixXcd modes = angular_modes(samples);
  const int n = static_cast<int>(samples.cols());
  for (int j = 0; j < n; ++j) {
    // Nyquist column has no unambiguous sign; band-limited fields leave it empty.
    const double l = (j == n / 2) ? 0.0 : static_cast<double>(fft_mode(j, n));
    modes.col(j) *= l;
  }
  return angular_samples(modes);
}

HarmonicCoefficients project_onto_harmonics(const SpinorField& field, int l_lo, int l_hi) {
  if (field.components() != 2) throw std::invalid_argument("projection expects 2-spinors");
  const int n = field.grid.size();
  for (int l : {l_lo, l_hi})
    if (std::abs(l) + 1 >= n / 2)
      throw AliasingError("mode " + std::to_string(l) + " aliases on a " + std::to_string(n) +
                          "-angle grid");
  const Eigen::MatrixXcd modes = angular_modes(field.values);
  HarmonicCoefficients out;
  for (int l = l_lo; l <= l_hi; ++l) {
    const int col = l >= 0 ? l : l + n;
    out[{l, 1}] = modes(0, col);
    out[{l, -1}] = modes(1, col);
  }
  return out;
}

}  // namespace planar_dirac
