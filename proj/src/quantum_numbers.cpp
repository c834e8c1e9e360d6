#include "planar_dirac/quantum_numbers.hpp"

#include <algorithm>
#include <cstdlib>
#include <tuple>

namespace planar_dirac {

std::string HalfInt::str() const {
  if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

bool QuantumNumbers::consistent() const {
  if (s != 1 && s != -1) return false;
  if (mj.twice() != 2 * l + s) return false;
  if (k.twice() != s * mj.twice()) return false;
  return k.is_half_odd();
}

std::string QuantumNumbers::str() const {
  return "(l=" + std::to_string(l) + ", s=" + (s > 0 ? "+1" : "-1") + ", mj=" + mj.str() +
         ", k=" + k.str() + ")";
}

QuantumNumbers from_ls(int l, int s) {
  if (s != 1 && s != -1) throw SectorError("s must be +1 or -1, got " + std::to_string(s));
  const auto mj = HalfInt::from_twice(2 * l + s);
  return {l, s, mj, HalfInt::from_twice(s * mj.twice())};
}

QuantumNumbers from_kmj(HalfInt k, HalfInt mj) {
  if (!k.is_half_odd()) throw SectorError("k = " + k.str() + " is not in the spectrum of K");
  if (std::abs(k.twice()) != std::abs(mj.twice()))
    throw SectorError("inconsistent sector: |k| = |" + k.str() + "| differs from |mj| = |" +
                      mj.str() + "|");
  const int s = k.twice() / mj.twice();
  return {(mj.twice() - s) / 2, s, mj, k};
}

std::vector<QuantumNumbers> enumerate_sectors(int l_max) {
  if (l_max < 0) throw SectorError("l_max must be non-negative");
  std::vector<QuantumNumbers> out;
  for (int l = -l_max; l <= l_max; ++l)
    for (int s : {-1, 1}) out.push_back(from_ls(l, s));
  std::sort(out.begin(), out.end(), [](const QuantumNumbers& a, const QuantumNumbers& b) {
    return std::tuple(a.k.twice(), a.mj.twice()) < std::tuple(b.k.twice(), b.mj.twice());
  });
  return out;
}

HalfInt parse_half_int(const std::string& text) {
  const auto slash = text.find('/');
  std::size_t used = 0;
  if (slash == std::string::npos) {
    const int v = std::stoi(text, &used);
    if (used != text.size()) throw SectorError("malformed half-integer '" + text + "'");
    return HalfInt::from_int(v);
  }
  const int num = std::stoi(text.substr(0, slash), &used);
  if (used != slash || text.substr(slash + 1) != "2")
    throw SectorError("malformed half-integer '" + text + "'");
  return HalfInt::from_twice(num);
}

}  // namespace planar_dirac
