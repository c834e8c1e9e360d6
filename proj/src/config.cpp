#include "planar_dirac/config.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace planar_dirac {

ConfigError::ConfigError(const std::string& origin, int line, const std::string& what)
    : std::runtime_error(origin + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
      line_(line) {}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

struct Entry {
  std::string value;
  int line;
};

struct Section {
  int line = 0;
  std::map<std::string, Entry> keys;
};

class Reader {
public:
  Reader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(int line, const std::string& msg) const { throw ConfigError(origin_, line, msg); }

  double real(const Entry& e, const std::string& key) const {
    const std::string v = trim(e.value);
    double x = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size() || v.empty())
      fail(e.line, "'" + key + "' expects a number, got '" + v + "'");
    if (!std::isfinite(x)) fail(e.line, "'" + key + "' must be finite");
    return x;
  }

  int integer(const Entry& e, const std::string& key) const {
    const std::string v = trim(e.value);
    int x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size() || v.empty())
      fail(e.line, "'" + key + "' expects an integer, got '" + v + "'");
    return x;
  }

  bool boolean(const Entry& e, const std::string& key) const {
    const std::string v = trim(e.value);
    if (v == "true") return true;
    if (v == "false") return false;
    fail(e.line, "'" + key + "' expects true or false, got '" + v + "'");
  }

  void only(const std::string& name, const Section& s, const std::set<std::string>& allowed) const {
    for (const auto& [k, e] : s.keys)
      if (!allowed.count(k)) fail(e.line, "unknown key '" + k + "' in [" + name + "]");
  }

  const Entry& need(const std::string& name, const Section& s, const std::string& key) const {
    const auto it = s.keys.find(key);
    if (it == s.keys.end()) fail(s.line, "[" + name + "] needs '" + key + "'");
    return it->second;
  }

private:
  std::string origin_;
};

Profile read_profile(const Reader& r, const std::string& name, const Section& s) {
  const auto& fam = r.need(name, s, "family");
  ProfileFamily family;
  try {
    family = parse_family(trim(fam.value));
  } catch (const std::exception& e) {
    r.fail(fam.line, e.what());
  }
  std::set<std::string> params;
  switch (family) {
    case ProfileFamily::zero: break;
    case ProfileFamily::constant: params = {"value"}; break;
    case ProfileFamily::harmonic:
    case ProfileFamily::linear: params = {"lambda"}; break;
    case ProfileFamily::coulomb: params = {"alpha"}; break;
    case ProfileFamily::woods_saxon: params = {"v0", "radius", "diffuseness"}; break;
  }
  auto allowed = params;
  allowed.insert("family");
  r.only(name, s, allowed);
  auto p = [&](const char* key) { return r.real(r.need(name, s, key), key); };
  try {
    switch (family) {
      case ProfileFamily::zero: return Profile{};
      case ProfileFamily::constant: return ProfileTerm::constant(p("value"));
      case ProfileFamily::harmonic: return ProfileTerm::harmonic(p("lambda"));
      case ProfileFamily::linear: return ProfileTerm::linear(p("lambda"));
      case ProfileFamily::coulomb: return ProfileTerm::coulomb(p("alpha"));
      case ProfileFamily::woods_saxon: return ProfileTerm::woods_saxon(p("v0"), p("radius"), p("diffuseness"));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    r.fail(fam.line, e.what());
  }
  return Profile{};
}

std::vector<QuantumNumbers> read_sectors(const Reader& r, const Entry& e) {
  std::vector<QuantumNumbers> out;
  std::stringstream list(unquote(trim(e.value)));
  std::string item;
  while (std::getline(list, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto comma = item.find(',');
    if (comma == std::string::npos) r.fail(e.line, "sector '" + item + "' is not of the form k,mj");
    try {
      out.push_back(from_kmj(parse_half_int(trim(item.substr(0, comma))), parse_half_int(trim(item.substr(comma + 1)))));
    } catch (const std::exception& ex) {
      r.fail(e.line, "sector '" + item + "': " + ex.what());
    }
  }
  if (out.empty()) r.fail(e.line, "sectors list is empty");
  return out;
}

std::pair<double, double> read_window(const Reader& r, const Entry& e) {
  std::string v = trim(e.value);
  if (v.size() < 2 || v.front() != '[' || v.back() != ']') r.fail(e.line, "energy_window expects [lo, hi]");
  v = v.substr(1, v.size() - 2);
  const auto comma = v.find(',');
  if (comma == std::string::npos) r.fail(e.line, "energy_window expects [lo, hi]");
  const double lo = r.real({v.substr(0, comma), e.line}, "energy_window");
  const double hi = r.real({v.substr(comma + 1), e.line}, "energy_window");
  if (!(lo < hi)) r.fail(e.line, "energy_window needs lo < hi");
  return {lo, hi};
}

}  // namespace

RunConfig parse_config(std::string_view text, const std::string& origin) {
  const Reader r(origin);
  std::map<std::string, Section> sections;
  std::string current;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (!quoted && line[i] == '#') {
        line.resize(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') r.fail(line_no, "unterminated section header");
      current = trim(line.substr(1, line.size() - 2));
      static const std::set<std::string> known = {"problem",         "potential.sigma", "potential.delta",
                                                  "potential.phi",   "potential.tensor", "scan",
                                                  "algebra",         "oracle"};
      if (!known.count(current)) r.fail(line_no, "unknown section [" + current + "]");
      if (sections.count(current)) r.fail(line_no, "duplicate section [" + current + "]");
      sections[current].line = line_no;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) r.fail(line_no, "expected key = value");
    if (current.empty()) r.fail(line_no, "key outside of any section");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) r.fail(line_no, "empty key");
    auto& sec = sections[current];
    if (sec.keys.count(key)) r.fail(line_no, "duplicate key '" + key + "'");
    sec.keys[key] = {trim(line.substr(eq + 1)), line_no};
  }

  RunConfig cfg;
  cfg.digest = sha256_hex(text);
  const auto prob = sections.find("problem");
  if (prob == sections.end()) r.fail(0, "missing [problem] section");
  {
    const auto& s = prob->second;
    r.only("problem", s, {"mass", "rho_max", "grid_points"});
    cfg.potentials.mass = r.real(r.need("problem", s, "mass"), "mass");
    if (cfg.potentials.mass <= 0.0) r.fail(s.keys.at("mass").line, "mass must be positive");
    if (s.keys.count("rho_max")) {
      cfg.rho_max = r.real(s.keys.at("rho_max"), "rho_max");
      if (cfg.rho_max < 0.0) r.fail(s.keys.at("rho_max").line, "rho_max must be >= 0 (0 selects it automatically)");
    }
    if (s.keys.count("grid_points")) {
      cfg.grid_points = r.integer(s.keys.at("grid_points"), "grid_points");
      if (cfg.grid_points < 100) r.fail(s.keys.at("grid_points").line, "grid_points must be at least 100");
    }
  }
  const std::pair<const char*, Profile PotentialSet::*> slots[] = {{"potential.sigma", &PotentialSet::sigma},
                                                                   {"potential.delta", &PotentialSet::delta},
                                                                   {"potential.phi", &PotentialSet::phi},
                                                                   {"potential.tensor", &PotentialSet::tensor}};
  for (const auto& [name, member] : slots)
    if (const auto it = sections.find(name); it != sections.end())
      cfg.potentials.*member = read_profile(r, name, it->second);

  if (const auto it = sections.find("scan"); it != sections.end()) {
    const auto& s = it->second;
    r.only("scan", s, {"sectors", "energy_window", "max_nodes"});
    ScanConfig scan;
    scan.sectors = read_sectors(r, r.need("scan", s, "sectors"));
    scan.energy_window = read_window(r, r.need("scan", s, "energy_window"));
    if (s.keys.count("max_nodes")) {
      scan.max_nodes = r.integer(s.keys.at("max_nodes"), "max_nodes");
      if (scan.max_nodes < 0) r.fail(s.keys.at("max_nodes").line, "max_nodes must be >= 0");
    }
    cfg.scan = scan;
  }
  if (const auto it = sections.find("algebra"); it != sections.end()) {
    const auto& s = it->second;
    r.only("algebra", s, {"seeds", "trials", "n_angles", "band_limit", "tolerance", "inject_wrong_claim"});
    auto& a = cfg.algebra;
    auto positive = [&](const char* key, int& slot) {
      if (!s.keys.count(key)) return;
      slot = r.integer(s.keys.at(key), key);
      if (slot <= 0) r.fail(s.keys.at(key).line, std::string(key) + " must be positive");
    };
    positive("seeds", a.seeds);
    positive("trials", a.trials);
    positive("n_angles", a.n_angles);
    positive("band_limit", a.band_limit);
    if (s.keys.count("tolerance")) a.tolerance = r.real(s.keys.at("tolerance"), "tolerance");
    if (s.keys.count("inject_wrong_claim"))
      a.inject_wrong_claim = r.boolean(s.keys.at("inject_wrong_claim"), "inject_wrong_claim");
    if (a.band_limit > a.n_angles / 2 - 2)
      r.fail(s.line, "band_limit too large for n_angles (needs band_limit <= n_angles/2 - 2)");
  }
  if (const auto it = sections.find("oracle"); it != sections.end()) {
    const auto& s = it->second;
    r.only("oracle", s, {"nodes", "tolerance"});
    if (s.keys.count("nodes")) cfg.oracle.nodes = r.integer(s.keys.at("nodes"), "nodes");
    if (s.keys.count("tolerance")) cfg.oracle.tolerance = r.real(s.keys.at("tolerance"), "tolerance");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), 0, "cannot open configuration file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

}  // namespace planar_dirac
