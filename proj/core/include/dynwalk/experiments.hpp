#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dynwalk/analytic.hpp"
#include "dynwalk/clocks.hpp"
#include "dynwalk/erdos.hpp"
#include "dynwalk/report.hpp"

// Monte Carlo experiment runners.  Every runner is deterministic in
// (params, master_seed) independently of thread count: work is split into
// fixed-size shards, each path derives its seed from its global index, and
// shard partials are combined in shard order.

namespace dynwalk::experiments {

struct RunConfig {
  std::uint64_t master_seed = 1;
  std::uint64_t shard_size = 2048;
  bool allow_rare = false; // override the expected-hits >= 20 guard
};

struct TailSweepParams {
  std::uint64_t n = 10000;
  std::vector<double> z_values;
  std::uint64_t M = 100000;
  analytic::TailBand band{1.0 / 9.0, 2.0, 0.5, 2.0}; // default slack (0.5, 2.0)
};

/// Annealed sweep: fresh clocks per path, P{sup_{t in [0,1]} S_n(t) >= z sqrt(n)}
/// against tail_band(z).  One sup per path serves every z.  Out-of-regime z
/// (z > 0.5 sqrt(n / ln n)) and rare-event z (f(z) M < 20 without the
/// override) produce flagged rows, never silent drops.
std::vector<report::ReportRow> run_tail_sweep(const TailSweepParams& p, const RunConfig& cfg);

struct QuenchedTailParams {
  std::uint64_t n = 10000;
  double z = 2.5;
  std::vector<std::uint64_t> clock_seeds;
  std::uint64_t M = 100000;
  double eps = 0.5;        // upper band (2 + eps) f(z)
  double lower_slack = 0.5; // lower band lower_slack * (1/9) f(z)
};

/// One fixed clock log per seed; quenched estimate of the sup tail with an
/// upper row against (2 + eps) f(z) and a lower row against
/// lower_slack * (1/9) f(z).
std::vector<report::ReportRow> run_quenched_tail(const QuenchedTailParams& p,
                                                 const RunConfig& cfg);

struct ClockVerifyParams {
  std::uint64_t n = 100000;
  double delta = 0.05;
  double alpha = 0.2;
  std::uint64_t reps = 100;
  double horizon = 1.0;
};

/// Empirical frequency of {uniform grid deviation >= alpha} over fresh
/// logs, against the clamped analytic bound.
std::vector<report::ReportRow> run_clock_verification(const ClockVerifyParams& p,
                                                      const RunConfig& cfg);

struct FddParams {
  std::uint64_t n = 2000;
  std::vector<double> s_grid;
  std::vector<double> t_grid;
  std::uint64_t reps = 10000;
  double z_max = 4.0;
};

/// Empirical covariance of the rescaled field over the grid versus
/// e^{-|s-s'|} min(t,t'); one row per grid pair with its z-score, plus a
/// summary row on max |z|.
std::vector<report::ReportRow> run_fdd_covariance(const FddParams& p, const RunConfig& cfg);

struct RegressionParams {
  std::uint64_t n = 10000;
  double u = 0.3;
  double v = 0.7;
  std::uint64_t clock_seed = 1;
  std::uint64_t M = 10000;
  double z_max = 4.0;
};

/// Quenched conditional-law check at (u, v): regression slope, residual
/// variance, and conditional tail rows.
std::vector<report::ReportRow> run_regression_check(const RegressionParams& p,
                                                    const RunConfig& cfg);

struct Block {
  double t_lo = 0, t_hi = 0; // walk-fraction interval
  double s_lo = 0, s_hi = 0; // dynamical-time interval
  double area() const { return (t_hi - t_lo) * (s_hi - s_lo); }
};

/// Blocks are neighboring when one coordinate interval coincides and the
/// other intervals abut (possibly equal); everything else is rejected.
bool blocks_neighboring(const Block& a, const Block& b);

struct BlockMomentParams {
  std::uint64_t n = 1000;
  std::vector<std::pair<Block, Block>> pairs;
  std::vector<double> bound_coeffs; // per pair; 10 in general, 4 for the independent kind
  std::uint64_t reps = 10000;
};

/// MC estimate of E |Y(I)|^2 |Y(J)|^2 for rectangle increments Y of the
/// rescaled field, checked against coeff * |I| * |J| + 4 SE.
std::vector<report::ReportRow> run_block_moment_check(const BlockMomentParams& p,
                                                      const RunConfig& cfg);

struct ErdosSuiteParams {
  std::size_t n_max = 10000;         // sequence length for classifications
  erdos::GrowthEnvelope envelope;    // localization envelope (clamped form)
  std::vector<std::size_t> loc_js;   // empty = every j with e_j <= walk_cap
  std::uint64_t walk_cap = 10000;    // largest walk length simulated
  std::uint64_t M = 100000;
  double ratio_low = 0.005;          // 10^-2 with 0.5 slack
};

/// (a) classification rows for the parametric sweeps, (b) localization
/// ratio rows P{S*_j in I_j} / P{S*_j >= H_j sqrt(e_j)} with band
/// [ratio_low, 1], (c) pair-envelope table rows for the three scale
/// regimes (informational).
std::vector<report::ReportRow> run_erdos_suite(const ErdosSuiteParams& p, const RunConfig& cfg);

struct PaleyZygmundParams {
  std::uint64_t n = 10000;
  double z = 2.0;
  std::uint64_t clock_seed = 1;
  std::uint64_t M = 100000;
};

/// Occupation time J = |{u in [0,1] : S_n(u) >= z sqrt(n)}| under the
/// quenched measure: mean against Phibar(z) (stationarity), second moment
/// against 9 z^{-2} Phibar(z) on good logs, and the second-moment lower
/// bound P{J > 0} >= (E J)^2 / E J^2.
std::vector<report::ReportRow> paley_zygmund_check(const PaleyZygmundParams& p,
                                                   const RunConfig& cfg);

} // namespace dynwalk::experiments
