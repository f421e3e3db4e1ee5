#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dynwalk/clocks.hpp"

// Event-driven simulation of the dynamical Gaussian walk S_n(t): n i.i.d.
// standard normal increments, each replaced by a fresh deviate at the jump
// times of its own clock.  Paths are right-continuous piecewise constant.
//
// Deviate stream discipline (fixed so the brute-force oracle is
// bit-comparable): one stream per path, initial deviates first in index
// order, then one replacement per event in event order.

namespace dynwalk::walk {

struct WalkPath {
  std::uint64_t n = 0;
  double horizon = 1.0;
  std::vector<double> times;  // t_0 = 0 < t_1 < ... ; value[i] holds on [t_i, t_{i+1})
  std::vector<double> values; // S at each segment start
  std::uint64_t clock_seed = 0;
  std::uint64_t deviate_seed = 0;
};

/// Incremental simulator with reusable scratch; the workhorse for Monte
/// Carlo loops.  Exact resummation every 2^16 events caps rounding drift
/// at ~1e-9 sqrt(n) over million-event logs.
class WalkSimulator {
 public:
  explicit WalkSimulator(std::uint64_t n);

  void run(const clocks::ClockEventLog& log, std::uint64_t deviate_seed, WalkPath& out);

  /// Increments after the last run (the omega array at the final time).
  const std::vector<double>& increments() const { return omega_; }

 private:
  std::uint64_t n_;
  std::vector<double> omega_;
};

WalkPath simulate_path(std::uint64_t n, const clocks::ClockEventLog& log,
                       std::uint64_t deviate_seed);

/// Test oracle: identical output values under the same seed discipline,
/// computed by full O(n) resummation at every event.  Budget-capped.
WalkPath brute_force_path(std::uint64_t n, const clocks::ClockEventLog& log,
                          std::uint64_t deviate_seed);

/// Exact maximum of the piecewise-constant path over [a, b], including the
/// value in force at a.
double path_sup(const WalkPath& path, double a, double b);
double path_sup(const WalkPath& path);

/// Lebesgue measure of {v in [0, horizon] : S(v) >= level}.
double occupation_time(const WalkPath& path, double level);

/// sup_{t} max_{1<=k<=n} S_k(t), maintained with an indexed tree over the
/// increments (point update, maximal-prefix-sum query, O(log n) per event).
double running_max_sup(std::uint64_t n, const clocks::ClockEventLog& log,
                       std::uint64_t deviate_seed);

/// O(n) reference for the indexed tree, small-n validation only.
double max_prefix_scan(const std::vector<double>& increments);

/// M independent deviate realizations against one fixed clock log
/// (the quenched measure); deviate seeds derived from base_seed.
std::vector<double> quenched_resample(const clocks::ClockEventLog& log, std::uint64_t M,
                                      const std::function<double(const WalkPath&)>& functional,
                                      std::uint64_t base_seed);

/// Quenched regression of S_n(v) on S_n(u) against the conditional law
/// S_n(v) | F_u ~ N((1 - N/n) S_n(u), N (2 - N/n)).
struct RegressionReport {
  std::uint64_t n_changed = 0; // N^n_{u->v} of the fixed log
  bool degenerate = false;     // N == 0: point-mass conditional law
  double slope = 0, slope_se = 0, expected_slope = 0;
  double resid_var = 0, resid_var_se = 0, expected_resid_var = 0;
  // empirical conditional tail P{S_n(v) >= y | S_n(u) in the middle
  // quintile} against the Phibar prediction averaged over the bin
  double cond_tail_emp = 0, cond_tail_pred = 0, cond_tail_se = 0;
  std::uint64_t samples = 0;
};

RegressionReport conditional_moments_check(const clocks::ClockEventLog& log, double u, double v,
                                           std::uint64_t M, std::uint64_t base_seed);

/// Matrix of U^n_t(s) = S_{floor(n t)}(s) / sqrt(n) over the grids.
struct RescaledFieldSample {
  std::vector<double> s_grid; // dynamical times
  std::vector<double> t_grid; // walk-length fractions
  std::vector<double> u;      // row-major [t][s]
  double at(std::size_t ti, std::size_t si) const { return u[ti * s_grid.size() + si]; }
};

RescaledFieldSample rescaled_field(std::uint64_t n, const clocks::ClockEventLog& log,
                                   std::uint64_t deviate_seed, std::vector<double> s_grid,
                                   std::vector<double> t_grid);

/// Rectangle increment of the field over (t_lo, t_hi] x (s_lo, s_hi]
/// (first interval in the walk-fraction coordinate):
/// U_{t_hi}(s_hi) - U_{t_hi}(s_lo) - U_{t_lo}(s_hi) + U_{t_lo}(s_lo).
/// Corners must lie on the sample grids.
double block_increment(const RescaledFieldSample& field, double t_lo, double t_hi, double s_lo,
                       double s_hi);

/// Optional CSV dump of (time, value) segments.
void write_path_csv(const WalkPath& path, std::ostream& os);

} // namespace dynwalk::walk
