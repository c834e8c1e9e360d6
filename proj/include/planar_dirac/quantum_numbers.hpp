#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace planar_dirac {

/// Exact half-integer value stored as its doubled numerator (value = twice/2).
class HalfInt {
public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt from_int(int value) { return HalfInt(2 * value); }

  constexpr int twice() const { return twice_; }
  constexpr bool is_half_odd() const { return twice_ % 2 != 0; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr HalfInt operator-() const { return HalfInt(-twice_); }

  /// Renders "p/2" for half-odd values, a plain integer otherwise.
  std::string str() const;

  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

class SectorError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Labels of a symmetry sector: orbital l (eigenvalue of the modified orbital
/// generator), s = ±1 (eigenvalue of beta*Sigma_z), total m_j and spin-orbit k.
/// Relations m_j = l + s/2 and k = s m_j hold exactly.
struct QuantumNumbers {
  int l = 0;
  int s = 1;
  HalfInt mj;
  HalfInt k;

  /// Angular mode of the upper spinor component (equals l).
  int upper_mode() const { return l; }
  /// Angular mode of the lower spinor component (l + s).
  int lower_mode() const { return l + s; }

  bool consistent() const;
  std::string str() const;

  friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;
};

QuantumNumbers from_ls(int l, int s);

/// Inverse of from_ls; throws SectorError when |k| != |m_j| or k is not
/// half-odd.
QuantumNumbers from_kmj(HalfInt k, HalfInt mj);

/// All sectors with |l| <= l_max and s = ±1, ordered by (2k, 2m_j).
std::vector<QuantumNumbers> enumerate_sectors(int l_max);

/// Parses "p/2" or an integer into a HalfInt.
HalfInt parse_half_int(const std::string& text);

}  // namespace planar_dirac
