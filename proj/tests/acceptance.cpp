// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
#include "planar_dirac/degeneracy.hpp"
#include "planar_dirac/fd_oracle.hpp"
#include "planar_dirac/operator_lab.hpp"
#include "planar_dirac/radial_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace planar_dirac;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<double> norm_errors;  // every radial solution produced below

QuantumNumbers sector(int twice_k, int twice_mj) {
  return from_kmj(HalfInt::from_twice(twice_k), HalfInt::from_twice(twice_mj));
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::vector<RadialSolution> solve(const QuantumNumbers& q, const PotentialSet& p, std::pair<double, double> window,
                                  int max_nodes = 4, NodeLabel label = NodeLabel::upper) {
  BoundStateOptions opt;
  opt.max_nodes = max_nodes;
  opt.label = label;
  auto found = find_bound_states(q, p, window, default_grid(decay_radius(q, window.second, p)), opt).solutions;
  for (const auto& s : found) {
    std::vector<double> density(s.g.size());
    for (std::size_t i = 0; i < s.g.size(); ++i) density[i] = s.g[i] * s.g[i] + s.f[i] * s.f[i];
    norm_errors.push_back(std::abs(s.grid.integrate(density) - 1.0));
  }
  return found;
}

PotentialSet spin_harmonic() {
  PotentialSet p;
  p.sigma = ProfileTerm::harmonic(1.0);
  return p;
}

PotentialSet pseudospin_harmonic() {
  PotentialSet p;
  p.delta = ProfileTerm::harmonic(1.0);
  return p;
}

PotentialSet oscillator() {
  PotentialSet p;
  p.tensor = ProfileTerm::linear(1.0);
  return p;
}

void record_norms(const SpectrumReport& r) {
  for (const auto& s : r.sectors)
    for (const auto& st : s.states) norm_errors.push_back(st.norm_residual);
}

Outcome algebra() {
  AlgebraOptions opt;
  for (std::uint64_t s = 1; s <= 20; ++s) opt.seeds.push_back(s);
  const auto r = verify_algebra(opt);
  Outcome o;
  int held = 0, expected_fail = 0;
  std::string failed;
  for (const auto& c : r.records) {
    if (!c.pass) {
      o.pass = false;
      failed += (failed.empty() ? "" : ", ") + c.claim_id + " (" + sci(c.residual) + ")";
    } else if (c.expect_hold) {
      ++held;
    } else {
      ++expected_fail;
    }
  }
  o.detail = std::to_string(held) + " relations hold at <= 1e-10 over 20 seeds, " + std::to_string(expected_fail) +
             " recorded variants fail as they should";
  if (!failed.empty()) o.detail += "; failing: " + failed;
  return o;
}

Outcome closure() {
  std::vector<PotentialSet> configs(5);
  configs[1].sigma = ProfileTerm::harmonic(1.0);
  configs[2].delta = ProfileTerm::harmonic(1.0);
  configs[2].sigma = ProfileTerm::constant(0.3);
  configs[3].tensor = ProfileTerm::linear(1.0);
  configs[4].sigma = ProfileTerm::woods_saxon(-2.0, 3.0, 0.5);
  configs[4].phi = ProfileTerm::coulomb(0.4);
  configs[4].tensor = ProfileTerm::linear(0.3);
  const std::vector<QuantumNumbers> sectors = {sector(1, 1),  sector(-1, 1), sector(3, 3),
                                               sector(-3, -3), sector(1, -1), sector(5, -5)};
  auto g = [](double r) { return r * std::sqrt(r) * std::exp(-0.5 * r * r); };
  auto f = [](double r) { return r * r * std::exp(-0.6 * r * r); };
  double worst = 0.0, control = 1e300;
  ClosureOptions broken;
  broken.phi_perturbation = 0.1;
  for (const auto& p : configs)
    for (const auto& q : sectors) {
      worst = std::max(worst, hamiltonian_sector_closure(p, q, g, f));
      control = std::min(control, hamiltonian_sector_closure(p, q, g, f, broken));
    }
  return {worst <= 1e-8 && control >= 1e-2,
          "30 cases, max leakage " + sci(worst) + "; phi-dependent control min leakage " + sci(control)};
}

Outcome eigen_relations() {
  double worst = 0.0;
  std::vector<double> radii, weights;
  for (int i = 1; i <= 60; ++i) {
    radii.push_back(0.1 * i);
    weights.push_back(0.01 * i);
  }
  int n_sectors = 0;
  for (const auto& q : enumerate_sectors(3)) {
    const auto psi = sector_state(
        q, radii, weights, [](double r) { return r * std::exp(-r * r / 4); },
        [](double r) { return r * r * std::exp(-r * r / 3); }, 32);
    worst = std::max({worst, eigen_residual(op_S(2), psi, q.s), eigen_residual(op_Lcal(2), psi, q.l),
                      eigen_residual(op_Jz(), psi, q.mj.value()), eigen_residual(op_K(), psi, q.k.value())});
    ++n_sectors;
  }
  const auto p = spin_harmonic();
  double ladder = 0.0;
  int images = 0;
  for (const auto& q : {sector(3, 3), sector(5, -5), sector(1, 1), sector(-1, 1)}) {
    const auto states = solve(q, p, {1.0, 4.0}, 0);
    if (states.empty()) return {false, "no ground state in " + q.str()};
    const auto r = ladder_apply(states[0], p, LadderKind::spin);
    ladder = std::max({ladder, eigen_residual(op_S(2), r.image, -q.s),
                       eigen_residual(op_Jz(), r.image, q.mj.value() - q.s),
                       eigen_residual(op_K(), r.image, 1.0 - q.k.value())});
    ++images;
  }
  return {worst <= 1e-12 && ladder <= 1e-10,
          std::to_string(n_sectors) + " constructed sectors, max residual " + sci(worst) + "; " +
              std::to_string(images) + " ladder images, max residual " + sci(ladder)};
}

Outcome dirac_oscillator() {
  const auto p = oscillator();
  const std::map<int, std::vector<double>> expected = {{1, {0, 4, 8}}, {-1, {4, 8, 12}}};
  double worst = 0.0, worst_fd = 0.0;
  for (const auto& [twice_k, values] : expected) {
    const auto q = sector(twice_k, 1);
    const std::pair<double, double> window{0.5, 3.7};
    const auto states = solve(q, p, window);
    const auto fd = refined_levels(q, p, decay_radius(q, window.second, p), window);
    if (states.size() < values.size() || fd.size() < values.size())
      return {false, "missing levels in sector k=" + q.k.str()};
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double e2 = states[i].energy * states[i].energy - 1.0;
      worst = std::max(worst, std::abs(e2 - values[i]));
      worst_fd = std::max(worst_fd, std::abs(fd[i].energy * fd[i].energy - 1.0 - values[i]));
    }
  }
  return {worst <= 1e-6 && worst_fd <= 1e-6,
          "max |eps^2-1 - exact| shooting " + sci(worst) + ", finite differences " + sci(worst_fd)};
}

Outcome spin_degeneracy() {
  DegeneracyOptions opt;
  opt.window = {1.0, 10.0};
  opt.max_nodes = 4;
  const auto r = verify_degeneracy(spin_harmonic(), {sector(3, 3), sector(5, 5)}, opt);
  record_norms(r);
  double worst = 0.0;
  for (const auto& p : r.pairs) worst = std::max(worst, p.abs_delta / std::abs(p.eps_a));
  const bool complete = r.pairs.size() == 10 && r.unpaired == 0;
  return {complete && r.all_pass && worst <= 1e-8 && r.control_lifted && r.control_min_delta >= 1e-3,
          std::to_string(r.pairs.size()) + " pairs (3/2,-1/2) and (5/2,-3/2), n=0..4, max rel |d eps| " + sci(worst) +
              "; control min lift " + sci(r.control_min_delta)};
}

Outcome pseudospin_degeneracy() {
  DegeneracyOptions opt;
  opt.mode = SymmetryMode::pseudospin;
  opt.window = {1.05, 10.0};
  opt.max_nodes = 4;
  const auto r = verify_degeneracy(pseudospin_harmonic(), {sector(1, 1), sector(3, 3)}, opt);
  record_norms(r);
  double worst = 0.0;
  int positive = 0;
  std::map<int, int> per_couple;
  for (const auto& p : r.pairs) {
    if (p.eps_a <= 1.0) continue;
    ++positive;
    ++per_couple[p.a.k.twice()];
    worst = std::max(worst, p.abs_delta / std::abs(p.eps_a));
  }
  return {per_couple.size() == 2 && r.all_pass && worst <= 1e-8,
          std::to_string(positive) + " positive-energy pairs (1/2,-3/2) and (3/2,-5/2), max rel |d eps| " +
              sci(worst) + "; control min lift " + sci(r.control_min_delta)};
}

Outcome oracle_equivalence() {
  struct Case {
    const char* name;
    PotentialSet p;
    std::vector<QuantumNumbers> sectors;
    std::pair<double, double> window;
  };
  const std::vector<Case> cases = {
      {"oscillator", oscillator(), {sector(1, 1), sector(-1, 1), sector(3, 3), sector(-3, 3)}, {0.5, 4.6}},
      {"spin", spin_harmonic(), {sector(3, 3), sector(5, 5), sector(1, 1), sector(-1, 1)}, {1.0, 7.0}},
      {"pseudospin", pseudospin_harmonic(), {sector(1, 1), sector(3, 3), sector(-3, 3), sector(-1, 1)}, {1.05, 7.0}}};
  double worst = 0.0;
  std::string detail;
  bool ok = true;
  for (const auto& c : cases) {
    struct Row {
      double energy;
      double fd;
    };
    std::vector<Row> rows;
    for (const auto& q : c.sectors) {
      const auto states = solve(q, c.p, c.window, 8);
      const auto fd = refined_levels(q, c.p, decay_radius(q, c.window.second, c.p), c.window);
      for (const auto& s : states) {
        const auto it = std::find_if(fd.begin(), fd.end(), [&](const OracleLevel& l) { return l.nodes == s.n; });
        rows.push_back({s.energy, it == fd.end() ? std::nan("") : it->energy});
      }
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.energy < b.energy; });
    if (rows.size() < 10) {
      ok = false;
      detail += std::string(c.name) + ": only " + std::to_string(rows.size()) + " states; ";
      continue;
    }
    double w = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double rel = std::abs(rows[i].energy - rows[i].fd) / rows[i].energy;
      w = std::isnan(rel) ? 1.0 : std::max(w, rel);
    }
    worst = std::max(worst, w);
    detail += std::string(c.name) + " " + sci(w) + ", ";
  }
  return {ok && worst <= 1e-6, "10 lowest states per configuration, max rel diff: " + detail.substr(0, detail.size() - 2)};
}

Outcome ladder_mapping() {
  const auto p = spin_harmonic();
  const std::vector<std::pair<QuantumNumbers, int>> picks = {
      {sector(3, 3), 0}, {sector(3, 3), 1}, {sector(5, -5), 0}, {sector(1, 1), 0}};
  double lowest = 1.0;
  for (const auto& [q, n] : picks) {
    const auto a = solve(q, p, {1.0, 6.0}, n);
    const auto target = spin_partner(q);
    const auto b = solve(target, p, {1.0, 6.0}, n);
    const auto ia = std::find_if(a.begin(), a.end(), [&](const auto& s) { return s.n == n; });
    const auto ib = std::find_if(b.begin(), b.end(), [&](const auto& s) { return s.n == n; });
    if (ia == a.end() || ib == b.end()) return {false, "missing state n=" + std::to_string(n) + " in " + q.str()};
    const auto r = ladder_apply(*ia, p, LadderKind::spin);
    if (!(r.target == target)) return {false, "ladder image lands in the wrong sector for " + q.str()};
    lowest = std::min(lowest, overlap(r.image, to_momentum(*ib)));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", lowest);
  return {lowest >= 0.999, "4 spin-symmetric states, min overlap " + std::string(buf)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome normalization_and_determinism() {
  const double worst = norm_errors.empty() ? 1.0 : *std::max_element(norm_errors.begin(), norm_errors.end());
  const fs::path root = fs::temp_directory_path() / "planar_dirac_acceptance";
  fs::remove_all(root);
  const std::string cli = PLANAR_DIRAC_CLI;
  const std::string cfg = PLANAR_DIRAC_CONFIGS;
  const std::vector<std::string> runs = {
      "spectrum --config " + cfg + "/dirac_oscillator.ini --dump-wavefunctions",
      "degeneracy --mode spin --config " + cfg + "/spin_harmonic.ini",
      "oracle-compare --config " + cfg + "/pseudospin_harmonic.ini",
      "verify-algebra --config " + cfg + "/default_algebra.ini"};
  int files = 0;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& r : runs) {
      const std::string cmd = "\"" + cli + "\" " + r + " --out \"" + (root / std::to_string(pass)).string() +
                              "\" > /dev/null 2>&1";
      if (std::system(cmd.c_str()) == -1) return {false, "cannot run " + cli};
    }
  bool identical = true;
  for (const auto& e : fs::recursive_directory_iterator(root / "0")) {
    if (!e.is_regular_file()) continue;
    const auto other = root / "1" / fs::relative(e.path(), root / "0");
    if (!fs::exists(other) || slurp(e.path()) != slurp(other)) identical = false;
    ++files;
  }
  return {worst <= 1e-10 && identical && files > 4,
          std::to_string(norm_errors.size()) + " solutions, max |norm - 1| " + sci(worst) + "; " +
              std::to_string(files) + " CLI output files " + (identical ? "byte-identical" : "DIFFER") +
              " across two runs"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "algebra suite", 30, algebra},
      {2, "Hamiltonian sector closure", 60, closure},
      {3, "eigenvalue relations", 60, eigen_relations},
      {4, "Dirac oscillator anchor", 60, dirac_oscillator},
      {5, "spin degeneracy", 120, spin_degeneracy},
      {6, "pseudospin degeneracy", 120, pseudospin_degeneracy},
      {7, "oracle equivalence", 180, oracle_equivalence},
      {8, "ladder mapping", 60, ladder_mapping},
      {9, "normalization and determinism", 120, normalization_and_determinism},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = o.pass && dt <= c.budget_s;
    all = all && ok;
    std::printf("criterion %d %-30s %s  %s [%.1f s of %.0f s]\n", c.id, c.name, ok ? "PASS" : "FAIL",
                o.detail.c_str(), dt, c.budget_s);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
