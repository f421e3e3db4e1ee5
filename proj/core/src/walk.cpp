#include "dynwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "dynwalk/analytic.hpp"
#include "dynwalk/rng.hpp"

namespace dynwalk::walk {

namespace {

constexpr std::uint64_t kQuenchStream = 0x71756e6368ULL; // "qunch"
constexpr std::size_t kResumEvery = 1u << 16;

std::size_t segment_of(const WalkPath& path, double t) {
  auto it = std::upper_bound(path.times.begin(), path.times.end(), t);
  if (it == path.times.begin()) throw std::domain_error("walk: query time before 0");
  return static_cast<std::size_t>(it - path.times.begin()) - 1;
}

double value_at(const WalkPath& path, double t) { return path.values[segment_of(path, t)]; }

} // namespace

WalkSimulator::WalkSimulator(std::uint64_t n) : n_(n), omega_(n) {
  if (n < 1) throw std::invalid_argument("WalkSimulator: n >= 1 required");
}

void WalkSimulator::run(const clocks::ClockEventLog& log, std::uint64_t deviate_seed,
                        WalkPath& out) {
  if (log.n != n_) throw std::invalid_argument("WalkSimulator: log.n mismatch");
  out.n = n_;
  out.horizon = log.horizon;
  out.clock_seed = log.seed;
  out.deviate_seed = deviate_seed;
  out.times.clear();
  out.values.clear();
  out.times.reserve(log.events.size() + 1);
  out.values.reserve(log.events.size() + 1);

  rng::Rng gen(deviate_seed);
  double sum = 0.0;
  for (auto& w : omega_) {
    w = gen.normal();
    sum += w;
  }
  out.times.push_back(0.0);
  out.values.push_back(sum);

  std::size_t since_resum = 0;
  for (const auto& e : log.events) {
    const double fresh = gen.normal();
    sum += fresh - omega_[e.index];
    omega_[e.index] = fresh;
    if (++since_resum == kResumEvery) {
      sum = std::accumulate(omega_.begin(), omega_.end(), 0.0);
      since_resum = 0;
    }
    out.times.push_back(e.time);
    out.values.push_back(sum);
  }
}

WalkPath simulate_path(std::uint64_t n, const clocks::ClockEventLog& log,
                       std::uint64_t deviate_seed) {
  WalkSimulator sim(n);
  WalkPath path;
  sim.run(log, deviate_seed, path);
  return path;
}

WalkPath brute_force_path(std::uint64_t n, const clocks::ClockEventLog& log,
                          std::uint64_t deviate_seed) {
  if (log.n != n) throw std::invalid_argument("brute_force_path: log.n mismatch");
  if (n * (log.events.size() + 1) > 100'000'000ULL)
    throw std::runtime_error("brute_force_path: budget exceeded, oracle is for small n");
  WalkPath path;
  path.n = n;
  path.horizon = log.horizon;
  path.clock_seed = log.seed;
  path.deviate_seed = deviate_seed;

  rng::Rng gen(deviate_seed);
  std::vector<double> omega(n);
  for (auto& w : omega) w = gen.normal();
  auto full_sum = [&] { return std::accumulate(omega.begin(), omega.end(), 0.0); };
  path.times.push_back(0.0);
  path.values.push_back(full_sum());
  for (const auto& e : log.events) {
    omega[e.index] = gen.normal();
    path.times.push_back(e.time);
    path.values.push_back(full_sum());
  }
  return path;
}

double path_sup(const WalkPath& path, double a, double b) {
  if (a > b) throw std::domain_error("path_sup: a > b");
  const std::size_t i = segment_of(path, a);
  const std::size_t j = segment_of(path, std::min(b, path.horizon));
  return *std::max_element(path.values.begin() + static_cast<std::ptrdiff_t>(i),
                           path.values.begin() + static_cast<std::ptrdiff_t>(j) + 1);
}

double path_sup(const WalkPath& path) { return path_sup(path, 0.0, path.horizon); }

double occupation_time(const WalkPath& path, double level) {
  double total = 0.0;
  const std::size_t m = path.times.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (path.values[i] < level) continue;
    const double hi = (i + 1 < m) ? path.times[i + 1] : path.horizon;
    total += hi - path.times[i];
  }
  return total;
}

namespace {

// Complete binary tree over the n increments; each node carries the sum of
// its span and the maximum over nonempty prefixes of its span.  The root's
// prefix maximum is max_{1<=k<=n} (w_1 + ... + w_k).
class PrefixMaxTree {
 public:
  explicit PrefixMaxTree(const std::vector<double>& w) : n_(w.size()) {
    size_ = 1;
    while (size_ < n_) size_ <<= 1;
    sum_.assign(2 * size_, 0.0);
    best_.assign(2 * size_, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n_; ++i) {
      sum_[size_ + i] = w[i];
      best_[size_ + i] = w[i];
    }
    for (std::size_t v = size_ - 1; v >= 1; --v) pull(v);
  }

  void set(std::size_t i, double w) {
    std::size_t v = size_ + i;
    sum_[v] = w;
    best_[v] = w;
    for (v >>= 1; v >= 1; v >>= 1) pull(v);
  }

  double max_prefix() const { return best_[1]; }

 private:
  void pull(std::size_t v) {
    sum_[v] = sum_[2 * v] + sum_[2 * v + 1];
    best_[v] = std::max(best_[2 * v], sum_[2 * v] + best_[2 * v + 1]);
  }
  std::size_t n_, size_;
  std::vector<double> sum_, best_;
};

} // namespace

double max_prefix_scan(const std::vector<double>& increments) {
  double acc = 0.0, best = -std::numeric_limits<double>::infinity();
  for (double w : increments) {
    acc += w;
    best = std::max(best, acc);
  }
  return best;
}

double running_max_sup(std::uint64_t n, const clocks::ClockEventLog& log,
                       std::uint64_t deviate_seed) {
  if (log.n != n) throw std::invalid_argument("running_max_sup: log.n mismatch");
  rng::Rng gen(deviate_seed);
  std::vector<double> omega(n);
  for (auto& w : omega) w = gen.normal();
  PrefixMaxTree tree(omega);
  double sup = tree.max_prefix();
  for (const auto& e : log.events) {
    tree.set(e.index, gen.normal());
    sup = std::max(sup, tree.max_prefix());
  }
  return sup;
}

std::vector<double> quenched_resample(const clocks::ClockEventLog& log, std::uint64_t M,
                                      const std::function<double(const WalkPath&)>& functional,
                                      std::uint64_t base_seed) {
  WalkSimulator sim(log.n);
  WalkPath path;
  std::vector<double> out(M);
  for (std::uint64_t m = 0; m < M; ++m) {
    sim.run(log, rng::derive_seed(base_seed, kQuenchStream, m), path);
    out[m] = functional(path);
  }
  return out;
}

RegressionReport conditional_moments_check(const clocks::ClockEventLog& log, double u, double v,
                                           std::uint64_t M, std::uint64_t base_seed) {
  if (!(0.0 <= u && u <= v && v <= log.horizon))
    throw std::domain_error("conditional_moments_check: need 0 <= u <= v <= horizon");
  if (M < 100) throw std::invalid_argument("conditional_moments_check: M >= 100 required");

  RegressionReport rep;
  const auto n = log.n;
  const auto N = clocks::count_changed(log, u, v);
  rep.n_changed = N;
  rep.samples = M;
  const double nd = static_cast<double>(n), Nd = static_cast<double>(N);
  rep.expected_slope = 1.0 - Nd / nd;
  rep.expected_resid_var = Nd * (2.0 - Nd / nd);
  rep.degenerate = (N == 0);

  WalkSimulator sim(n);
  WalkPath path;
  std::vector<double> xs(M), ys(M);
  for (std::uint64_t m = 0; m < M; ++m) {
    sim.run(log, rng::derive_seed(base_seed, kQuenchStream, m), path);
    xs[m] = value_at(path, u);
    ys[m] = value_at(path, v);
  }

  double sxx = 0, sxy = 0;
  for (std::uint64_t m = 0; m < M; ++m) {
    sxx += xs[m] * xs[m];
    sxy += xs[m] * ys[m];
  }
  // Through-origin regression; the conditional mean has no intercept.
  rep.slope = sxy / sxx;
  double rss = 0;
  for (std::uint64_t m = 0; m < M; ++m) {
    const double r = ys[m] - rep.slope * xs[m];
    rss += r * r;
  }
  rep.resid_var = rss / static_cast<double>(M - 1);
  rep.slope_se = std::sqrt(rep.resid_var / sxx);
  rep.resid_var_se = rep.resid_var * std::sqrt(2.0 / static_cast<double>(M));

  if (!rep.degenerate) {
    // Conditional tail within the middle quintile of the conditioning value.
    std::vector<std::uint64_t> order(M);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::uint64_t a, std::uint64_t b) { return xs[a] < xs[b]; });
    const double sd = std::sqrt(rep.expected_resid_var);
    const double y0 = 1.5 * sd; // fixed threshold; mean of x in the bin is ~0
    double pred = 0;
    std::uint64_t hits = 0, count = 0;
    for (std::uint64_t r = (4 * M) / 10; r < (6 * M) / 10; ++r) {
      const auto m = order[r];
      ++count;
      if (ys[m] >= y0) ++hits;
      pred += analytic::normal_sf((y0 - rep.expected_slope * xs[m]) / sd);
    }
    pred /= static_cast<double>(count);
    rep.cond_tail_emp = static_cast<double>(hits) / static_cast<double>(count);
    rep.cond_tail_pred = pred;
    rep.cond_tail_se = std::sqrt(pred * (1.0 - pred) / static_cast<double>(count));
  }
  return rep;
}

RescaledFieldSample rescaled_field(std::uint64_t n, const clocks::ClockEventLog& log,
                                   std::uint64_t deviate_seed, std::vector<double> s_grid,
                                   std::vector<double> t_grid) {
  if (log.n != n) throw std::invalid_argument("rescaled_field: log.n mismatch");
  if (!std::is_sorted(s_grid.begin(), s_grid.end()))
    throw std::invalid_argument("rescaled_field: s_grid must be nondecreasing");
  if (!s_grid.empty() && (s_grid.front() < 0.0 || s_grid.back() > log.horizon))
    throw std::domain_error("rescaled_field: s_grid outside [0, horizon]");

  RescaledFieldSample field;
  field.s_grid = std::move(s_grid);
  field.t_grid = std::move(t_grid);
  const std::size_t S = field.s_grid.size(), T = field.t_grid.size();
  field.u.assign(T * S, 0.0);

  // Walk-length cutoffs floor(n t), clamped into [0, n].
  std::vector<std::uint64_t> cutoff(T);
  for (std::size_t ti = 0; ti < T; ++ti) {
    const double t = field.t_grid[ti];
    if (t < 0.0) throw std::domain_error("rescaled_field: t_grid entry < 0");
    cutoff[ti] = std::min<std::uint64_t>(n, static_cast<std::uint64_t>(std::floor(
                                                static_cast<double>(n) * t + 1e-12)));
  }

  rng::Rng gen(deviate_seed);
  std::vector<double> omega(n);
  for (auto& w : omega) w = gen.normal();

  const double root_n = std::sqrt(static_cast<double>(n));
  std::size_t next_event = 0;
  for (std::size_t si = 0; si < S; ++si) {
    while (next_event < log.events.size() && log.events[next_event].time <= field.s_grid[si]) {
      omega[log.events[next_event].index] = gen.normal();
      ++next_event;
    }
    // One prefix pass serves every cutoff.
    std::vector<std::pair<std::uint64_t, std::size_t>> marks(T);
    for (std::size_t ti = 0; ti < T; ++ti) marks[ti] = {cutoff[ti], ti};
    std::sort(marks.begin(), marks.end());
    double acc = 0.0;
    std::size_t mi = 0;
    for (std::uint64_t k = 0; k <= n; ++k) {
      while (mi < T && marks[mi].first == k) {
        field.u[marks[mi].second * S + si] = acc / root_n;
        ++mi;
      }
      if (k < n) acc += omega[k];
    }
  }
  return field;
}

namespace {

std::size_t grid_index(const std::vector<double>& grid, double x, const char* what) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::fabs(grid[i] - x) <= 1e-12 * std::max(1.0, std::fabs(x))) return i;
  }
  throw std::invalid_argument(std::string("block_increment: ") + what + " not on the grid");
}

} // namespace

double block_increment(const RescaledFieldSample& field, double t_lo, double t_hi, double s_lo,
                       double s_hi) {
  const std::size_t ti0 = grid_index(field.t_grid, t_lo, "t_lo");
  const std::size_t ti1 = grid_index(field.t_grid, t_hi, "t_hi");
  const std::size_t si0 = grid_index(field.s_grid, s_lo, "s_lo");
  const std::size_t si1 = grid_index(field.s_grid, s_hi, "s_hi");
  return field.at(ti1, si1) - field.at(ti1, si0) - field.at(ti0, si1) + field.at(ti0, si0);
}

void write_path_csv(const WalkPath& path, std::ostream& os) {
  os << "time,value\n";
  os.precision(17);
  for (std::size_t i = 0; i < path.times.size(); ++i)
    os << path.times[i] << "," << path.values[i] << "\n";
}

} // namespace dynwalk::walk
