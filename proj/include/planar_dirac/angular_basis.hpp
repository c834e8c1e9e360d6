#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <stdexcept>
#include <utility>

namespace planar_dirac {

using cd = std::complex<double>;

/// Uniform angular samples phi_j = 2 pi j / n on [0, 2 pi).
class AngularGrid {
public:
  explicit AngularGrid(int n_angles = 64);

  int size() const { return n_; }
  double angle(int j) const;
  double weight() const;  // trapezoid weight 2 pi / n
  /// Largest |l| whose product with a unit shift still resolves without aliasing.
  int max_resolved_mode() const { return n_ / 2 - 2; }

  friend bool operator==(const AngularGrid&, const AngularGrid&) = default;

private:
  int n_;
};

/// A spinor field sampled on an AngularGrid: one row per spinor slot, one
/// column per angle.
struct SpinorField {
  AngularGrid grid;
  Eigen::MatrixXcd values;  // components x n_angles

  SpinorField(AngularGrid g, int components);
  int components() const { return static_cast<int>(values.rows()); }
};

/// Spinorial circular harmonic h_{l,s} = e^{i l phi}/sqrt(2 pi) chi_s with
/// chi_{+1} = (1, 0), chi_{-1} = (0, 1).
struct CircularHarmonic {
  int l = 0;
  int s = 1;
  friend auto operator<=>(const CircularHarmonic&, const CircularHarmonic&) = default;
};

Eigen::Vector2cd eval_h(int l, int s, double phi);
SpinorField sample_h(int l, int s, const AngularGrid& grid);

class GridMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class AliasingError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Trapezoid approximation of the integral of a^dagger b over [0, 2 pi).
cd inner_product(const SpinorField& a, const SpinorField& b);

/// Pointwise multiplication by sigma . rho_hat = [[0, e^{-i phi}], [e^{i phi}, 0]].
SpinorField apply_sigma_rho(const SpinorField& field);

/// Index map of sigma_rho on harmonics, (l, s) -> (l + s, -s).
CircularHarmonic sigma_rho_image(CircularHarmonic h);

using HarmonicCoefficients = std::map<CircularHarmonic, cd>;

/// Coefficients <h_{l,s}, field> for l_lo <= l <= l_hi using an FFT per slot.
/// Throws AliasingError when |l| + 1 >= n_angles / 2.
HarmonicCoefficients project_onto_harmonics(const SpinorField& field, int l_lo, int l_hi);

/// Per-slot Fourier coefficients c_l = (1/sqrt(2 pi)) int e^{-i l phi} v(phi) dphi.
/// Columns are in FFT order: column j holds l = j for j < n/2, l = j - n otherwise.
Eigen::MatrixXcd angular_modes(const Eigen::MatrixXcd& samples);

/// Inverse of angular_modes.
Eigen::MatrixXcd angular_samples(const Eigen::MatrixXcd& modes);

/// Applies -i d/dphi by spectral differentiation to every row of samples.
Eigen::MatrixXcd spectral_lz(const Eigen::MatrixXcd& samples);

/// Angular mode carried by FFT column j on an n-point grid.
inline int fft_mode(int j, int n) { return j < n / 2 ? j : j - n; }

}  // namespace planar_dirac
