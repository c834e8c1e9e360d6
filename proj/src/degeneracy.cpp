#include "planar_dirac/degeneracy.hpp"

#include "planar_dirac/operator_lab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <future>
#include <map>
#include <set>
#include <stdexcept>

namespace planar_dirac {

QuantumNumbers spin_partner(const QuantumNumbers& q) {
  return from_kmj(HalfInt::from_twice(2 - q.k.twice()), HalfInt::from_twice(q.mj.twice() - 2 * q.s));
}

QuantumNumbers pseudospin_partner(const QuantumNumbers& q) {
  return from_kmj(HalfInt::from_twice(-2 - q.k.twice()), HalfInt::from_twice(q.mj.twice() + 2 * q.s));
}

std::string to_string(SymmetryMode m) { return m == SymmetryMode::spin ? "spin" : "pseudospin"; }

SymmetryMode parse_mode(const std::string& s) {
  if (s == "spin") return SymmetryMode::spin;
  if (s == "pseudospin") return SymmetryMode::pseudospin;
  throw std::invalid_argument("mode must be spin or pseudospin, got '" + s + "'");
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s = buf;
  std::replace(s.begin(), s.end(), ',', '.');  // guard against a comma locale
  return s;
}

namespace {

bool sector_less(const QuantumNumbers& a, const QuantumNumbers& b) {
  return std::pair(a.k.twice(), a.mj.twice()) < std::pair(b.k.twice(), b.mj.twice());
}

double harmonic_strength(const Profile& p) {
  double lambda = 0.0;
  for (const auto& t : p.terms())
    if (t.family == ProfileFamily::harmonic) lambda += t.p0;
  return lambda != 0.0 ? lambda : 1.0;
}

int key_of(const RadialSolution& s, SymmetryMode mode) { return mode == SymmetryMode::spin ? s.n : s.n_lower; }

struct PairingOutcome {
  std::vector<PairRecord> pairs;
  int unpaired = 0;
  std::vector<std::string> warnings;
};

PairingOutcome pair_up(const std::vector<std::pair<QuantumNumbers, QuantumNumbers>>& couples,
                       const std::map<std::pair<int, int>, const SectorSpectrum*>& solved, SymmetryMode mode,
                       double tol) {
  PairingOutcome out;
  auto find = [&](const QuantumNumbers& q) { return solved.at({q.k.twice(), q.mj.twice()}); };
  for (const auto& [qa, qb] : couples) {
    const auto* sa = find(qa);
    const auto* sb = find(qb);
    std::map<int, const RadialSolution*> by_key;
    for (const auto& s : sb->states) by_key[key_of(s, mode)] = &s;
    std::set<int> used;
    for (const auto& s : sa->states) {
      const int key = key_of(s, mode);
      const auto it = by_key.find(key);
      if (it == by_key.end()) {
        ++out.unpaired;
        out.warnings.push_back("state n=" + std::to_string(key) + " of " + qa.str() + " has no partner in " +
                               qb.str());
        continue;
      }
      used.insert(key);
      PairRecord r;
      r.a = qa;
      r.b = qb;
      r.n = key;
      r.eps_a = s.energy;
      r.eps_b = it->second->energy;
      r.abs_delta = std::abs(r.eps_a - r.eps_b);
      r.pass = r.abs_delta <= tol * std::max(std::abs(r.eps_a), std::abs(r.eps_b));
      out.pairs.push_back(r);
    }
    for (const auto& [key, s] : by_key)
      if (!used.count(key)) {
        ++out.unpaired;
        out.warnings.push_back("state n=" + std::to_string(key) + " of " + qb.str() + " has no partner in " +
                               qa.str());
      }
  }
  return out;
}

}  // namespace

std::vector<SectorSpectrum> solve_sectors(const PotentialSet& potentials, const std::vector<QuantumNumbers>& sectors,
                                          std::pair<double, double> window, int max_nodes, NodeLabel label,
                                          double rho_max, int grid_points, std::vector<std::string>& warnings) {
  if (rho_max <= 0.0)
    for (const auto& q : sectors) rho_max = std::max(rho_max, decay_radius(q, window.second, potentials));
  const RadialGrid grid = default_grid(rho_max, grid_points);
  BoundStateOptions bo;
  bo.max_nodes = max_nodes;
  bo.label = label;

  std::vector<std::future<BoundStateSearch>> jobs;
  for (const auto& q : sectors)
    jobs.push_back(std::async(std::launch::async,
                              [&, q] { return find_bound_states(q, potentials, window, grid, bo); }));
  std::vector<SectorSpectrum> out;
  for (std::size_t i = 0; i < sectors.size(); ++i) {
    auto found = jobs[i].get();
    for (auto& w : found.warnings) warnings.push_back(sectors[i].str() + ": " + w);
    out.push_back({sectors[i], rho_max, grid_points, std::move(found.solutions)});
  }
  return out;
}

SpectrumReport verify_degeneracy(const PotentialSet& potentials, const std::vector<QuantumNumbers>& sectors,
                                 const DegeneracyOptions& opt) {
  SpectrumReport report;
  report.config_digest = opt.config_digest;
  report.mode = opt.mode;
  const bool spin = opt.mode == SymmetryMode::spin;
  report.symmetric = spin ? is_spin_symmetric(potentials) : is_pseudospin_symmetric(potentials);
  if (!report.symmetric) {
    if (opt.require_symmetry)
      throw SymmetryConditionError(spin ? "spin symmetry needs V_phi = U = 0 and constant V_delta"
                                        : "pseudospin symmetry needs V_phi = U = 0 and constant V_sigma");
    report.warnings.push_back("potentials do not satisfy the " + to_string(opt.mode) +
                              " symmetry condition; pairs are computed as a check of the lift");
  }
  if (!spin && potentials.delta.asymptote() != Asymptote::confining && opt.window.first >= 0.0)
    report.warnings.push_back(
        "pseudospin partners for potentials that do not confine exist only at negative energy; the window [" +
        format_real(opt.window.first) + ", " + format_real(opt.window.second) + "] has no negative energies");

  auto partner = spin ? spin_partner : pseudospin_partner;
  std::vector<std::pair<QuantumNumbers, QuantumNumbers>> couples;
  std::vector<QuantumNumbers> all;
  std::set<std::array<int, 4>> seen_couple;
  std::set<std::pair<int, int>> seen_sector;
  for (const auto& q : sectors) {
    auto a = q, b = partner(q);
    if (sector_less(b, a)) std::swap(a, b);
    if (!seen_couple.insert({a.k.twice(), a.mj.twice(), b.k.twice(), b.mj.twice()}).second)
      continue;
    couples.emplace_back(a, b);
    for (const auto& x : {a, b})
      if (seen_sector.insert({x.k.twice(), x.mj.twice()}).second) all.push_back(x);
  }
  std::sort(all.begin(), all.end(), sector_less);
  const NodeLabel label = spin ? NodeLabel::upper : NodeLabel::lower;

  report.sectors = solve_sectors(potentials, all, opt.window, opt.max_nodes, label, opt.rho_max, opt.grid_points,
                                 report.warnings);
  std::map<std::pair<int, int>, const SectorSpectrum*> solved;
  for (const auto& s : report.sectors) solved[{s.sector.k.twice(), s.sector.mj.twice()}] = &s;
  auto primary = pair_up(couples, solved, opt.mode, opt.tol);
  report.pairs = std::move(primary.pairs);
  report.unpaired = primary.unpaired;
  for (auto& w : primary.warnings) report.warnings.push_back(std::move(w));

  if (opt.ladder_overlaps && report.symmetric) {
    const auto kind = spin ? LadderKind::spin : LadderKind::pseudospin;
    for (auto& p : report.pairs) {
      auto state = [&](const QuantumNumbers& q) -> const RadialSolution& {
        for (const auto& s : solved.at({q.k.twice(), q.mj.twice()})->states)
          if (key_of(s, opt.mode) == p.n) return s;
        throw std::logic_error("paired state vanished");
      };
      const auto lad = ladder_apply(state(p.a), potentials, kind);
      p.ladder_overlap = lad.annihilated ? 0.0 : overlap(lad.image, to_momentum(state(p.b)));
    }
  }

  if (opt.negative_control) {
    PotentialSet broken = potentials;
    if (spin)
      broken.delta = broken.delta + Profile(ProfileTerm::harmonic(opt.control_strength *
                                                                  harmonic_strength(potentials.sigma)));
    else
      broken.sigma = broken.sigma + Profile(ProfileTerm::harmonic(opt.control_strength *
                                                                  harmonic_strength(potentials.delta)));
    std::vector<std::string> ignored;
    const auto control = solve_sectors(broken, all, opt.window, opt.max_nodes, label, opt.rho_max, opt.grid_points,
                                       ignored);
    std::map<std::pair<int, int>, const SectorSpectrum*> csolved;
    for (const auto& s : control) csolved[{s.sector.k.twice(), s.sector.mj.twice()}] = &s;
    auto c = pair_up(couples, csolved, opt.mode, opt.tol);
    report.control_pairs = std::move(c.pairs);
    report.control_lifted = !report.control_pairs.empty();
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& p : report.control_pairs) {
      lo = std::min(lo, p.abs_delta);
      if (p.abs_delta < opt.control_lift) report.control_lifted = false;
    }
    if (!report.control_pairs.empty()) report.control_min_delta = lo;
  }

  if (report.pairs.empty()) report.warnings.push_back("no partner pairs found in the energy window");
  report.all_pass = !report.pairs.empty() && report.unpaired == 0 &&
                    std::all_of(report.pairs.begin(), report.pairs.end(), [](const auto& p) { return p.pass; });
  return report;
}

namespace {

nlohmann::json pair_json(const PairRecord& p) {
  nlohmann::json j = {{"k_a", p.a.k.str()},  {"mj_a", p.a.mj.str()}, {"k_b", p.b.k.str()},
                      {"mj_b", p.b.mj.str()}, {"n", p.n},             {"eps_a", p.eps_a},
                      {"eps_b", p.eps_b},     {"abs_delta", p.abs_delta}, {"pass", p.pass}};
  if (!std::isnan(p.ladder_overlap)) j["ladder_overlap"] = p.ladder_overlap;
  return j;
}

}  // namespace

nlohmann::json to_json(const SpectrumReport& r) {
  nlohmann::json j;
  j["config_digest"] = r.config_digest;
  j["mode"] = to_string(r.mode);
  j["symmetric"] = r.symmetric;
  j["partner_map"] = r.mode == SymmetryMode::spin
                         ? "(k, mj, s) -> (-k+1, mj-s, -s)"
                         : "(k, mj, s) -> (-k-1, mj+s, -s); derived by gamma5 conjugation of the spin map, "
                           "not quoted from the source";
  j["algebra_report"] = "algebra.json";
  auto& secs = j["sectors"] = nlohmann::json::array();
  for (const auto& s : r.sectors) {
    nlohmann::json e = {{"k", s.sector.k.str()}, {"mj", s.sector.mj.str()}, {"s", s.sector.s},
                        {"l", s.sector.l},       {"rho_max", s.rho_max},    {"grid_points", s.grid_points}};
    auto& states = e["states"] = nlohmann::json::array();
    for (const auto& st : s.states)
      states.push_back({{"n", st.n},
                        {"n_lower", st.n_lower},
                        {"energy", st.energy},
                        {"norm_residual", st.norm_residual},
                        {"match_residual", st.match_residual}});
    secs.push_back(e);
  }
  auto& pairs = j["pairs"] = nlohmann::json::array();
  for (const auto& p : r.pairs) pairs.push_back(pair_json(p));
  j["unpaired"] = r.unpaired;
  auto& ctrl = j["negative_control"];
  ctrl["pairs"] = nlohmann::json::array();
  for (const auto& p : r.control_pairs) ctrl["pairs"].push_back(pair_json(p));
  ctrl["min_abs_delta"] = std::isnan(r.control_min_delta) ? nlohmann::json(nullptr) : nlohmann::json(r.control_min_delta);
  ctrl["lifted"] = r.control_lifted;
  j["warnings"] = r.warnings;
  j["all_pass"] = r.all_pass;
  return j;
}

std::string pairs_csv(const SpectrumReport& r, bool control) {
  std::string out = "k_a,mj_a,k_b,mj_b,n,eps_a,eps_b,abs_delta,pass\n";
  for (const auto& p : control ? r.control_pairs : r.pairs)
    out += p.a.k.str() + "," + p.a.mj.str() + "," + p.b.k.str() + "," + p.b.mj.str() + "," + std::to_string(p.n) +
           "," + format_real(p.eps_a) + "," + format_real(p.eps_b) + "," + format_real(p.abs_delta) + "," +
           (p.pass ? "true" : "false") + "\n";
  return out;
}

}  // namespace planar_dirac
