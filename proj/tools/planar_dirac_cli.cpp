#include "CLI11.hpp"

#include "planar_dirac/config.hpp"
#include "planar_dirac/degeneracy.hpp"
#include "planar_dirac/fd_oracle.hpp"
#include "planar_dirac/operator_lab.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>

namespace fs = std::filesystem;
using namespace planar_dirac;
using nlohmann::json;

namespace {

enum Exit { pass = 0, physics_failure = 1, usage_error = 2, numeric_failure = 3 };

struct Common {
  std::string config;
  std::string out = "out";
  std::uint64_t seed = 1;
  bool dump_wavefunctions = false;
  std::optional<double> tol;
  std::optional<int> grid_points;
  std::string mode = "spin";
};

class OutputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& content) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw OutputError("cannot write " + path.string());
  out << content;
  if (!out) throw OutputError("write failed for " + path.string());
}

json header(const RunConfig& cfg, const Common& c) {
  return {{"tool", tool_name}, {"version", tool_version}, {"config_digest", cfg.digest}, {"seed", c.seed}};
}

std::string csv_header(const RunConfig& cfg, const Common& c) {
  return std::string("# ") + tool_name + " " + tool_version + "\n# config_sha256 " + cfg.digest + "\n# seed " +
         std::to_string(c.seed) + "\n";
}

const ScanConfig& need_scan(const RunConfig& cfg, const std::string& command) {
  if (!cfg.scan) throw ConfigError(command, 0, "this command needs a [scan] section in the configuration");
  return *cfg.scan;
}

std::vector<QuantumNumbers> sorted_sectors(std::vector<QuantumNumbers> s) {
  std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) {
    return std::pair(a.k.twice(), a.mj.twice()) < std::pair(b.k.twice(), b.mj.twice());
  });
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

int cmd_verify_algebra(const RunConfig& cfg, const Common& c) {
  AlgebraOptions opt;
  for (int i = 0; i < cfg.algebra.seeds; ++i) opt.seeds.push_back(c.seed + static_cast<std::uint64_t>(i));
  opt.trials = cfg.algebra.trials;
  opt.n_angles = cfg.algebra.n_angles;
  opt.band_limit = cfg.algebra.band_limit;
  opt.tolerance = c.tol.value_or(cfg.algebra.tolerance);
  opt.inject_wrong_claim = cfg.algebra.inject_wrong_claim;
  const auto report = verify_algebra(opt);

  json j = header(cfg, c);
  j["seeds"] = report.seeds;
  j["trials"] = opt.trials;
  j["tolerance"] = opt.tolerance;
  auto& recs = j["records"] = json::array();
  int failed = 0;
  for (const auto& r : report.records) {
    recs.push_back({{"claim_id", r.claim_id},
                    {"lhs", r.lhs},
                    {"rhs", r.rhs},
                    {"residual", r.residual},
                    {"tolerance", r.tolerance},
                    {"expect_hold", r.expect_hold},
                    {"pass", r.pass},
                    {"seed", r.seed}});
    if (!r.pass) {
      ++failed;
      std::cout << "FAIL " << r.claim_id << ": " << r.lhs << " = " << r.rhs << "  residual "
                << format_real(r.residual) << "\n";
    }
  }
  auto& f = j["findings"] = json::array();
  for (const auto& x : algebra_findings(report)) {
    json res = json::object();
    for (const auto& [name, value] : x.residuals) res[name] = value;
    f.push_back({{"topic", x.topic}, {"verdict", x.verdict}, {"residuals", res}});
  }
  j["all_pass"] = report.all_pass;
  write_file(fs::path(c.out) / "algebra.json", j.dump(2) + "\n");
  std::cout << report.records.size() - failed << "/" << report.records.size() << " claims pass over "
            << report.seeds.size() << " seeds\n";
  return report.all_pass ? pass : physics_failure;
}

std::string twice_label(HalfInt h) { return (h.twice() < 0 ? "m" : "p") + std::to_string(std::abs(h.twice())); }

int cmd_spectrum(const RunConfig& cfg, const Common& c) {
  const auto& scan = need_scan(cfg, "spectrum");
  const int points = c.grid_points.value_or(cfg.grid_points);
  std::vector<std::string> warnings;
  const auto spectra = solve_sectors(cfg.potentials, sorted_sectors(scan.sectors), scan.energy_window,
                                     scan.max_nodes, NodeLabel::upper, cfg.rho_max, points, warnings);
  std::string csv = csv_header(cfg, c) + "k,mj,n,energy,norm_residual,match_residual,grid_points\n";
  std::size_t rows = 0;
  bool normalized = true;
  for (const auto& s : spectra) {
    auto states = s.states;
    std::stable_sort(states.begin(), states.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
    for (const auto& st : states) {
      csv += s.sector.k.str() + "," + s.sector.mj.str() + "," + std::to_string(st.n) + "," + format_real(st.energy) +
             "," + format_real(st.norm_residual) + "," + format_real(st.match_residual) + "," +
             std::to_string(st.grid.size()) + "\n";
      ++rows;
      normalized = normalized && st.norm_residual <= 1e-10;
      if (c.dump_wavefunctions) {
        std::string wf = csv_header(cfg, c) + "# k " + s.sector.k.str() + " mj " + s.sector.mj.str() + " n " +
                         std::to_string(st.n) + " energy " + format_real(st.energy) + "\nrho,g,f\n";
        for (int i = 0; i < st.grid.size(); ++i)
          wf += format_real(st.grid.at(i)) + "," + format_real(st.g[i]) + "," + format_real(st.f[i]) + "\n";
        write_file(fs::path(c.out) / "wavefunctions" /
                       ("k" + twice_label(s.sector.k) + "_mj" + twice_label(s.sector.mj) + "_n" +
                        std::to_string(st.n) + ".csv"),
                   wf);
      }
    }
  }
  if (rows == 0) warnings.push_back("no bound states found in the energy window");
  std::string log;
  for (const auto& w : warnings) log += "warning: " + w + "\n";
  write_file(fs::path(c.out) / "spectrum.csv", csv);
  write_file(fs::path(c.out) / "spectrum.log", log);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  std::cout << rows << " states in " << spectra.size() << " sectors\n";
  if (!normalized) {
    std::cerr << "error: a solution failed the 1e-10 normalization check\n";
    return numeric_failure;
  }
  return pass;
}

int cmd_degeneracy(const RunConfig& cfg, const Common& c) {
  const auto& scan = need_scan(cfg, "degeneracy");
  DegeneracyOptions opt;
  opt.mode = parse_mode(c.mode);
  opt.window = scan.energy_window;
  opt.max_nodes = scan.max_nodes;
  opt.tol = c.tol.value_or(1e-8);
  opt.rho_max = cfg.rho_max;
  opt.grid_points = c.grid_points.value_or(cfg.grid_points);
  opt.require_symmetry = false;
  opt.negative_control = opt.mode == SymmetryMode::spin ? is_spin_symmetric(cfg.potentials)
                                                        : is_pseudospin_symmetric(cfg.potentials);
  opt.config_digest = cfg.digest;
  const auto report = verify_degeneracy(cfg.potentials, scan.sectors, opt);

  json j = header(cfg, c);
  j.update(to_json(report));
  j["tolerance"] = opt.tol;
  const std::string mode = to_string(opt.mode);
  write_file(fs::path(c.out) / ("degeneracy_" + mode + ".json"), j.dump(2) + "\n");
  write_file(fs::path(c.out) / ("pairs_" + mode + ".csv"), csv_header(cfg, c) + pairs_csv(report));
  if (opt.negative_control)
    write_file(fs::path(c.out) / ("pairs_" + mode + "_control.csv"), csv_header(cfg, c) + pairs_csv(report, true));
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  int ok = 0;
  for (const auto& p : report.pairs) {
    ok += p.pass;
    if (!p.pass)
      std::cout << "LIFTED " << p.a.k.str() << "," << p.a.mj.str() << " <-> " << p.b.k.str() << "," << p.b.mj.str()
                << " n=" << p.n << "  |delta eps| " << format_real(p.abs_delta) << "\n";
  }
  std::cout << ok << "/" << report.pairs.size() << " " << mode << " pairs degenerate, " << report.unpaired
            << " unpaired";
  if (opt.negative_control && !report.control_pairs.empty())
    std::cout << "; control " << (report.control_lifted ? "lifts" : "does not lift") << " the pairs (min "
              << report.control_min_delta << ")";
  std::cout << "\n";
  return report.all_pass ? pass : physics_failure;
}

int cmd_oracle_compare(const RunConfig& cfg, const Common& c) {
  const auto& scan = need_scan(cfg, "oracle-compare");
  const int nodes = c.grid_points.value_or(cfg.oracle.nodes);
  if (2 * nodes > max_oracle_nodes)
    throw OracleSizeError("oracle needs n and 2n nodes; 2n = " + std::to_string(2 * nodes) + " exceeds " +
                          std::to_string(max_oracle_nodes));
  const double tol = c.tol.value_or(cfg.oracle.tolerance);
  const auto sectors = sorted_sectors(scan.sectors);
  std::vector<std::string> warnings;
  const auto shooting = solve_sectors(cfg.potentials, sectors, scan.energy_window, scan.max_nodes, NodeLabel::upper,
                                      cfg.rho_max, cfg.grid_points, warnings);
  json j = header(cfg, c);
  j["fd_nodes"] = nodes;
  j["tolerance"] = tol;
  auto& out = j["sectors"] = json::array();
  bool all = true;
  std::size_t compared = 0;
  for (const auto& s : shooting) {
    auto fd = refined_levels(s.sector, cfg.potentials, s.rho_max, scan.energy_window, nodes);
    std::erase_if(fd, [&](const OracleLevel& l) { return l.nodes > scan.max_nodes; });
    std::map<int, const OracleLevel*> by_nodes;
    for (const auto& l : fd) by_nodes.emplace(l.nodes, &l);
    json rows = json::array(), unmatched = json::array();
    std::set<int> used;
    for (const auto& st : s.states) {
      const auto it = by_nodes.find(st.n);
      if (it == by_nodes.end()) {
        all = false;
        unmatched.push_back({{"method", "shooting"}, {"n", st.n}, {"energy", st.energy}});
        continue;
      }
      used.insert(st.n);
      const double rel = std::abs(st.energy - it->second->energy) / std::max(std::abs(st.energy), 1e-300);
      const bool ok = rel <= tol;
      all = all && ok;
      ++compared;
      rows.push_back({{"n", st.n}, {"shooting", st.energy}, {"fd", it->second->energy}, {"rel_diff", rel}, {"pass", ok}});
    }
    for (const auto& l : fd)
      if (!used.count(l.nodes)) {
        all = false;
        unmatched.push_back({{"method", "fd"}, {"n", l.nodes}, {"energy", l.energy}});
      }
    out.push_back({{"k", s.sector.k.str()}, {"mj", s.sector.mj.str()}, {"rho_max", s.rho_max}, {"states", rows},
                   {"unmatched", unmatched}});
  }
  if (compared == 0) warnings.push_back("no bound states found by either method");
  j["warnings"] = warnings;
  j["all_pass"] = all;
  write_file(fs::path(c.out) / "oracle.json", j.dump(2) + "\n");
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  std::cout << compared << " states compared, " << (all ? "all" : "not all") << " within " << tol
            << "\n";
  return all ? pass : physics_failure;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "configuration file")->required();
  sub->add_option("--out", c.out, "output directory");
  sub->add_option("--seed", c.seed, "first random seed");
  sub->add_flag("--dump-wavefunctions", c.dump_wavefunctions, "write rho, g, f per state");
  sub->add_option("--tol", c.tol, "tolerance override");
  sub->add_option("--grid-points", c.grid_points, "shooting grid points (spectrum, degeneracy) or oracle nodes");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar circular Dirac laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_name) + " " + tool_version);
  Common c;
  auto* alg = app.add_subcommand("verify-algebra", "check the generator algebra on random states");
  auto* spec = app.add_subcommand("spectrum", "bound-state energies per sector");
  auto* deg = app.add_subcommand("degeneracy", "spin or pseudospin partner degeneracy");
  auto* orc = app.add_subcommand("oracle-compare", "shooting against the finite-difference oracle");
  for (auto* s : {alg, spec, deg, orc}) add_common(s, c);
  deg->add_option("--mode", c.mode, "spin or pseudospin")->check(CLI::IsMember({"spin", "pseudospin"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? pass : usage_error;
  }

  try {
    const auto cfg = load_config(c.config);
    if (alg->parsed()) return cmd_verify_algebra(cfg, c);
    if (spec->parsed()) return cmd_spectrum(cfg, c);
    if (deg->parsed()) return cmd_degeneracy(cfg, c);
    return cmd_oracle_compare(cfg, c);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return usage_error;
  } catch (const OracleSizeError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return usage_error;
  } catch (const OutputError& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return numeric_failure;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return numeric_failure;
  }
}
