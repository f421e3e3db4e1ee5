#include "dynwalk/clocks.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "dynwalk/rng.hpp"

namespace dynwalk::clocks {

namespace {
constexpr std::uint64_t kClockStream = 0x636c6f636bULL; // "clock"
}

ClockEventLog sample_clocks(std::uint64_t n, double horizon, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_clocks: n >= 1 required");
  if (!(horizon > 0.0)) throw std::invalid_argument("sample_clocks: horizon > 0 required");
  ClockEventLog log;
  log.n = n;
  log.horizon = horizon;
  log.seed = seed;
  log.events.reserve(static_cast<std::size_t>(static_cast<double>(n) * horizon * 1.1) + 16);

  rng::Rng gen(rng::derive_seed(seed, kClockStream, 0));
  const double rate = static_cast<double>(n);
  double t = 0.0;
  for (;;) {
    // Time first, then mark: the documented draw order.
    double next = t + gen.exponential(rate);
    if (next > horizon) break;
    if (next <= t) next = std::nextafter(t, std::numeric_limits<double>::infinity());
    t = next;
    log.events.push_back({t, static_cast<std::uint32_t>(gen.below(n))});
  }
  return log;
}

std::uint64_t count_changed(const ClockEventLog& log, double s, double t) {
  if (s > t) throw std::domain_error("count_changed: s > t");
  if (s < 0.0 || t > log.horizon + 1e-12)
    throw std::domain_error("count_changed: window outside [0, horizon]");
  auto lo = std::upper_bound(log.events.begin(), log.events.end(), s,
                             [](double v, const ClockEvent& e) { return v < e.time; });
  auto hi = std::upper_bound(log.events.begin(), log.events.end(), t,
                             [](double v, const ClockEvent& e) { return v < e.time; });
  std::vector<std::uint32_t> idx;
  idx.reserve(static_cast<std::size_t>(hi - lo));
  for (auto it = lo; it != hi; ++it) idx.push_back(it->index);
  std::sort(idx.begin(), idx.end());
  return static_cast<std::uint64_t>(std::unique(idx.begin(), idx.end()) - idx.begin());
}

double expected_changed(std::uint64_t n, double s, double t) {
  if (s > t) throw std::domain_error("expected_changed: s > t");
  return static_cast<double>(n) * (-std::expm1(-(t - s)));
}

namespace {

double ratio_deviation(double count, std::uint64_t n, double gap) {
  const double mean = static_cast<double>(n) * (-std::expm1(-gap));
  return std::fabs(count / mean - 1.0);
}

DeviationStat exact_sweep(const ClockEventLog& log, double delta) {
  DeviationStat stat;
  stat.delta = delta;
  stat.method = DeviationMode::ExactSweep;
  const double horizon = log.horizon;
  if (delta > horizon) return stat; // admissible set empty, sup empty := 0

  const auto& ev = log.events;
  const std::size_t m = ev.size();
  // Breakpoints a_0 = 0 < a_1 < ... < a_m, plus the horizon.  For
  // s in [a_i, a_{i+1}) and t in [a_j, a_{j+1}) the count N equals the
  // number of distinct indices among events i+1..j, and the deviation is
  // extremal at the gap extremes of the rectangle.
  auto time_at = [&](std::size_t k) { return k == 0 ? 0.0 : ev[k - 1].time; };

  double sup = 0.0;
  std::vector<std::uint32_t> touch_count(log.n, 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t i = 0; i <= m; ++i) {
    const double s_lo = time_at(i);
    const double s_hi = (i == m) ? horizon : time_at(i + 1);
    std::uint64_t distinct = 0;
    touched.clear();
    for (std::size_t j = i; j <= m; ++j) {
      if (j > i) {
        const auto idx = ev[j - 1].index;
        if (touch_count[idx]++ == 0) {
          ++distinct;
          touched.push_back(idx);
        }
      }
      const double t_lo = time_at(j);
      const double t_hi = (j == m) ? horizon : std::min(time_at(j + 1), horizon);
      const double gap_max = t_hi - s_lo;
      if (gap_max < delta) continue;
      const double gap_min = std::max(delta, t_lo - s_hi);
      const double c = static_cast<double>(distinct);
      sup = std::max(sup, ratio_deviation(c, log.n, gap_min));
      sup = std::max(sup, ratio_deviation(c, log.n, gap_max));
    }
    for (auto idx : touched) touch_count[idx] = 0;
  }
  stat.value = sup;
  return stat;
}

DeviationStat grid_sweep(const ClockEventLog& log, double delta, double alpha) {
  DeviationStat stat;
  stat.delta = delta;
  stat.method = DeviationMode::Grid;
  const double horizon = log.horizon;
  const auto k =
      static_cast<std::uint64_t>(std::floor(1.0 + 8.0 / (alpha * (delta / horizon))));
  stat.grid_k = k;
  if (delta > horizon) return stat;

  const double step = horizon / static_cast<double>(k);
  const std::size_t kp = static_cast<std::size_t>(k) + 1; // grid points 0..k

  // first_after[i][m]: number of indices whose first event after grid
  // point i lands in (g_{m-1}, g_m].  Built with a difference array over
  // i so the whole table costs O(Pi + k^2).
  std::vector<std::int32_t> diff(kp * (kp + 1), 0);
  auto at = [&](std::size_t i, std::size_t mcol) -> std::int32_t& {
    return diff[i * kp + mcol];
  };

  // Events grouped by coordinate, time-sorted within each coordinate.
  std::vector<ClockEvent> by_index(log.events);
  std::stable_sort(by_index.begin(), by_index.end(),
                   [](const ClockEvent& a, const ClockEvent& b) { return a.index < b.index; });

  std::size_t pos = 0;
  while (pos < by_index.size()) {
    const auto idx = by_index[pos].index;
    double prev = 0.0;
    for (; pos < by_index.size() && by_index[pos].index == idx; ++pos) {
      const double e = by_index[pos].time;
      // grid s-points with prev <= g_i < e see this as their first event
      const auto i_lo = static_cast<std::size_t>(std::ceil(prev / step - 1e-12));
      auto i_hi_excl = static_cast<std::size_t>(std::ceil(e / step - 1e-12)); // first i with g_i >= e
      const std::size_t m_e = i_hi_excl;                                      // grid cell receiving e
      if (m_e > static_cast<std::size_t>(k)) {
        prev = e;
        continue; // event beyond the last grid point (horizon rounding)
      }
      if (i_lo < i_hi_excl) {
        at(i_lo, m_e) += 1;
        if (i_hi_excl < kp) at(i_hi_excl, m_e) -= 1;
      }
      prev = e;
    }
  }

  // Resolve the difference array over i, then prefix over m to get
  // N(g_i, g_m) for every grid pair.
  std::vector<std::int64_t> row(kp, 0), counts(kp * kp, 0);
  for (std::size_t mcol = 0; mcol < kp; ++mcol) {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < kp; ++i) {
      acc += at(i, mcol);
      counts[i * kp + mcol] = acc;
    }
  }
  double sup = 0.0;
  const auto min_cells = static_cast<std::size_t>(std::ceil(delta / step - 1e-12));
  for (std::size_t i = 0; i < kp; ++i) {
    std::int64_t acc = 0;
    for (std::size_t mcol = i + 1; mcol < kp; ++mcol) {
      acc += counts[i * kp + mcol];
      if (mcol - i < min_cells) continue;
      const double gap = static_cast<double>(mcol - i) * step;
      if (gap < delta) continue;
      sup = std::max(sup, ratio_deviation(static_cast<double>(acc), log.n, gap));
    }
  }
  stat.value = sup;
  return stat;
}

} // namespace

DeviationStat uniform_deviation(const ClockEventLog& log, double delta, DeviationMode mode,
                                double alpha, std::uint64_t exact_cap) {
  if (!(delta > 0.0)) throw std::domain_error("uniform_deviation: delta > 0 required");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("uniform_deviation: alpha in (0,1) required");
  if (mode == DeviationMode::ExactSweep) {
    if (log.events.size() > exact_cap)
      throw std::runtime_error(
          "uniform_deviation: event count exceeds the ExactSweep cap; use Grid");
    return exact_sweep(log, delta);
  }
  return grid_sweep(log, delta, alpha);
}

void write_csv(const ClockEventLog& log, std::ostream& os) {
  os << log.n << "," << log.horizon << "," << log.seed << "\n";
  os.precision(17);
  for (const auto& e : log.events) os << e.time << "," << e.index << "\n";
}

ClockEventLog read_csv(std::istream& is) {
  ClockEventLog log;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("clock csv: missing header");
  {
    std::istringstream hs(line);
    char c1, c2;
    if (!(hs >> log.n >> c1 >> log.horizon >> c2 >> log.seed) || c1 != ',' || c2 != ',')
      throw std::runtime_error("clock csv: bad header");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    ClockEvent e{};
    char c;
    if (!(ls >> e.time >> c >> e.index) || c != ',')
      throw std::runtime_error("clock csv: bad event row");
    log.events.push_back(e);
  }
  return log;
}

} // namespace dynwalk::clocks
