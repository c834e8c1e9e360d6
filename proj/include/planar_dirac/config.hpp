#pragma once

#include "planar_dirac/potentials.hpp"
#include "planar_dirac/quantum_numbers.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace planar_dirac {

inline constexpr const char* tool_name = "planar-dirac";
inline constexpr const char* tool_version = "1.0.0";

/// Malformed or unreadable configuration. line() is 0 when the problem is not
/// tied to a line (missing file, missing section).
class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string& origin, int line, const std::string& what);
  int line() const { return line_; }

private:
  int line_;
};

struct ScanConfig {
  std::vector<QuantumNumbers> sectors;
  std::pair<double, double> energy_window{0.0, 0.0};
  int max_nodes = 4;
};

struct AlgebraConfig {
  int seeds = 20;  // seeds first_seed .. first_seed + seeds - 1
  int trials = 4;
  int n_angles = 64;
  int band_limit = 8;
  double tolerance = 1e-10;
  bool inject_wrong_claim = false;
};

struct OracleConfig {
  int nodes = 1000;  // staggered nodes per component before the doubled run
  double tolerance = 1e-6;
};

/// Format (INI-like, '#' comments):
///   [problem]          mass, rho_max (0 or absent: automatic), grid_points
///   [potential.NAME]   NAME in sigma|delta|phi|tensor; family = zero|constant|harmonic|linear|coulomb|woods_saxon
///                      with value | lambda | lambda | alpha | v0, radius, diffuseness
///   [scan]             sectors = "k,mj; k,mj; ...", energy_window = [lo, hi], max_nodes
///   [algebra]          seeds, trials, n_angles, band_limit, tolerance, inject_wrong_claim
///   [oracle]           nodes, tolerance
struct RunConfig {
  PotentialSet potentials;
  double rho_max = 0.0;
  int grid_points = 2000;
  std::optional<ScanConfig> scan;
  AlgebraConfig algebra;
  OracleConfig oracle;
  std::string digest;  // SHA-256 of the file bytes, hex
};

RunConfig parse_config(std::string_view text, const std::string& origin = "<config>");
RunConfig load_config(const std::filesystem::path& path);

std::string sha256_hex(std::string_view bytes);

}  // namespace planar_dirac
