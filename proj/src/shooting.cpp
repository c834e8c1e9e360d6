#include "planar_dirac/shooting.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

namespace planar_dirac {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 2>;

constexpr double rescale_high = 1e8;
constexpr double rescale_low = 1e-8;

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

int count_nodes(const std::vector<double>& values, double rel_floor) {
  double peak = 0.0;
  for (double x : values) peak = std::max(peak, std::abs(x));
  if (peak == 0.0) return 0;
  const double floor = rel_floor * peak;
  int last = 0;
  int nodes = 0;
  for (double x : values) {
    if (std::abs(x) <= floor) continue;
    const int s = sign_of(x);
    if (last != 0 && s != last) ++nodes;
    last = s;
  }
  return nodes;
}

Trajectory integrate_between(const LinearSystem& system, double eps, const RadialGrid& grid,
                             int from, int to, Eigen::Vector2d y0, const ShootingOptions& opt) {
  Trajectory traj;
  traj.first = std::min(from, to);
  traj.last = std::max(from, to);
  const int count = traj.last - traj.first + 1;
  traj.u.assign(static_cast<std::size_t>(count), 0.0);
  traj.v.assign(static_cast<std::size_t>(count), 0.0);

  const double n0 = y0.norm();
  if (!(n0 > 0.0) || !std::isfinite(n0)) throw IntegrationError("seed must be finite and nonzero");
  State y{y0(0) / n0, y0(1) / n0};

  auto rhs = [&](const State& x, State& dxdt, double rho) {
    const Eigen::Matrix2d a = system.matrix(rho, eps);
    dxdt[0] = a(0, 0) * x[0] + a(0, 1) * x[1];
    dxdt[1] = a(1, 0) * x[0] + a(1, 1) * x[1];
  };
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(opt.abs_tol, opt.rel_tol);

  const int dir = to >= from ? 1 : -1;
  auto store = [&](int grid_index) {
    const auto k = static_cast<std::size_t>(grid_index - traj.first);
    traj.u[k] = y[0];
    traj.v[k] = y[1];
  };
  store(from);
  for (int i = from; i != to; i += dir) {
    const double r0 = grid.at(i);
    const double r1 = grid.at(i + dir);
    odeint::integrate_adaptive(stepper, rhs, y, r0, r1, r1 - r0);
    const double n = std::hypot(y[0], y[1]);
    if (!std::isfinite(n)) throw IntegrationError("non-finite state while integrating");
    if (n > rescale_high || (n < rescale_low && n > 0.0)) {
      y[0] /= n;
      y[1] /= n;
      for (int j = from; j != i + dir; j += dir) {
        const auto k = static_cast<std::size_t>(j - traj.first);
        traj.u[k] /= n;
        traj.v[k] /= n;
      }
    }
    store(i + dir);
  }
  return traj;
}

std::optional<Eigen::Vector2d> decaying_seed(const Eigen::Matrix2d& a) {
  const double diag = a(0, 0);
  const double disc = diag * diag + a(0, 1) * a(1, 0);
  if (!(disc > 0.0)) return std::nullopt;
  const double r = std::sqrt(disc);
  // Eigenvector for eigenvalue -r, two algebraically parallel forms.
  Eigen::Vector2d v1(a(0, 1), -r - diag);
  Eigen::Vector2d v2(r - diag, -a(1, 0));
  Eigen::Vector2d v = v2.norm() >= v1.norm() ? v2 : v1;
  if (v.norm() == 0.0) return std::nullopt;
  if (v(0) < 0.0 || (v(0) == 0.0 && v(1) < 0.0)) v = -v;
  return v / v.norm();
}

ShootingEngine::ShootingEngine(LinearSystem system, RadialGrid grid, int match_index,
                               ShootingOptions opt)
    : system_(std::move(system)), grid_(grid), match_(match_index), opt_(opt) {
  if (match_ <= 0 || match_ >= grid_.size() - 1)
    throw std::invalid_argument("match point must be an interior grid index");
}

Trajectory ShootingEngine::outward(double eps) const {
  const double r0 = grid_.at(0);
  return integrate_between(system_, eps, grid_, 0, match_, system_.origin_seed(r0, eps), opt_);
}

std::optional<Trajectory> ShootingEngine::inward(double eps) const {
  const int last = grid_.size() - 1;
  const auto seed = decaying_seed(system_.matrix(grid_.at(last), eps));
  if (!seed) return std::nullopt;
  return integrate_between(system_, eps, grid_, last, match_, *seed, opt_);
}

MismatchSample ShootingEngine::sample(double eps) const {
  MismatchSample s;
  s.eps = eps;
  const auto in = inward(eps);
  if (!in) return s;
  const auto out = outward(eps);
  s.bound = true;
  const double uo = out.u.back(), vo = out.v.back();
  const double ui = in->u.front(), vi = in->v.front();
  s.mismatch = (uo * vi - ui * vo) / (std::hypot(uo, vo) * std::hypot(ui, vi));
  s.nodes = count_nodes(out.u) + count_nodes(in->u);
  return s;
}

void ShootingEngine::refine(const MismatchSample& a, const MismatchSample& b, int depth,
                            std::vector<std::pair<MismatchSample, MismatchSample>>& brackets) const {
  const bool both_bound = a.bound && b.bound;
  const bool sign_change = both_bound && sign_of(a.mismatch) != sign_of(b.mismatch);
  const int node_jump = both_bound ? std::abs(a.nodes - b.nodes) : 0;
  const bool split = depth < opt_.max_refine_depth &&
                     ((a.bound != b.bound) || node_jump >= 2);
  if (split) {
    const auto mid = sample(0.5 * (a.eps + b.eps));
    refine(a, mid, depth + 1, brackets);
    refine(mid, b, depth + 1, brackets);
    return;
  }
  if (sign_change) brackets.emplace_back(a, b);
}

double ShootingEngine::polish(const MismatchSample& a, const MismatchSample& b) const {
  auto f = [this](double e) { return sample(e).mismatch; };
  auto tol = [this](double lo, double hi) {
    return std::abs(hi - lo) <= opt_.root_tol * std::max(1.0, std::abs(lo));
  };
  std::uintmax_t iters = 200;
  const auto [lo, hi] =
      boost::math::tools::toms748_solve(f, a.eps, b.eps, a.mismatch, b.mismatch, tol, iters);
  return 0.5 * (lo + hi);
}

std::vector<double> ShootingEngine::find_roots(double lo, double hi, int expected_roots) const {
  if (!(hi > lo)) return {};
  const int mesh = opt_.mesh_points > 0 ? opt_.mesh_points
                                        : std::clamp(16 * (expected_roots + 2), 64, 400);
  std::vector<MismatchSample> samples;
  samples.reserve(static_cast<std::size_t>(mesh));
  for (int i = 0; i < mesh; ++i) samples.push_back(sample(lo + (hi - lo) * i / (mesh - 1)));

  std::vector<std::pair<MismatchSample, MismatchSample>> brackets;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i)
    refine(samples[i], samples[i + 1], 0, brackets);

  std::vector<double> roots;
  for (const auto& [a, b] : brackets) {
    if (a.mismatch == 0.0) {
      roots.push_back(a.eps);
      continue;
    }
    if (b.mismatch == 0.0) {
      roots.push_back(b.eps);
      continue;
    }
    roots.push_back(polish(a, b));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [this](double x, double y) {
                            return std::abs(x - y) <= 10 * opt_.root_tol * std::max(1.0, std::abs(x));
                          }),
              roots.end());
  return roots;
}

MatchedSolution ShootingEngine::matched(double eps) const {
  const auto in = inward(eps);
  if (!in) throw IntegrationError("no decaying solution at the outer grid edge");
  const auto out = outward(eps);
  const Eigen::Vector2d yo(out.u.back(), out.v.back());
  const Eigen::Vector2d yi(in->u.front(), in->v.front());
  const double scale = yo.dot(yi) / yi.squaredNorm();

  MatchedSolution sol;
  sol.eps = eps;
  sol.mismatch = (yo(0) * yi(1) - yi(0) * yo(1)) / (yo.norm() * yi.norm());
  const int n = grid_.size();
  sol.u.resize(static_cast<std::size_t>(n));
  sol.v.resize(static_cast<std::size_t>(n));
  for (int i = 0; i <= match_; ++i) {
    sol.u[i] = out.u[i];
    sol.v[i] = out.v[i];
  }
  for (int i = match_ + 1; i < n; ++i) {
    sol.u[i] = scale * in->u[i - match_];
    sol.v[i] = scale * in->v[i - match_];
  }
  return sol;
}

}  // namespace planar_dirac
