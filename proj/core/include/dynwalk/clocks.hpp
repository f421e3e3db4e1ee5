#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

// The n superposed rate-one Poisson clocks on (0, horizon] and the
// changed-coordinate counts N^n_{s->t} they induce.  Window semantics are
// half-open (s, t] project-wide: an index counts when it has an event
// strictly after s and at or before t.

namespace dynwalk::clocks {

struct ClockEvent {
  double time;
  std::uint32_t index; // 0-based coordinate
};

struct ClockEventLog {
  std::uint64_t n = 0;
  double horizon = 1.0;
  std::uint64_t seed = 0;
  std::vector<ClockEvent> events; // sorted by time, strictly increasing

  std::uint64_t pi_total() const { return events.size(); }
  /// The good event {Pi_n <= 3n}.
  bool g_indicator() const { return pi_total() <= 3 * n; }
};

/// Superposition sampler: arrival times of a rate-n Poisson process on
/// (0, horizon] with i.i.d. uniform coordinate marks.  Deterministic in
/// (n, horizon, seed); floating-point time collisions are resolved by a
/// nextafter nudge in draw order.
ClockEventLog sample_clocks(std::uint64_t n, double horizon, std::uint64_t seed);

/// N^n_{s->t}: number of distinct coordinates refreshed in (s, t].
std::uint64_t count_changed(const ClockEventLog& log, double s, double t);

/// E N^n_{s->t} = n (1 - e^{-(t-s)}).
double expected_changed(std::uint64_t n, double s, double t);

enum class DeviationMode { ExactSweep, Grid };

struct DeviationStat {
  double delta = 0;
  double value = 0; // sup over admissible (s,t) of |N/EN - 1|; 0 if none admissible
  DeviationMode method = DeviationMode::Grid;
  std::uint64_t grid_k = 0; // grid resolution when method == Grid
};

/// Supremum of |N^n_{s->t} / E N^n_{s->t} - 1| over 0 <= s <= t <= horizon
/// with t - s >= delta.
///
/// ExactSweep evaluates the true supremum by corner sweep over the event
/// rectangles (N is piecewise constant; the ratio is monotone in t-s on
/// each rectangle).  O(Pi^2); refused above `exact_cap` events.
/// Grid restricts to the k-point grid with k = floor(1 + 8/(alpha Delta));
/// always <= the exact value.
DeviationStat uniform_deviation(const ClockEventLog& log, double delta, DeviationMode mode,
                                double alpha = 0.5, std::uint64_t exact_cap = 20000);

/// Flat CSV round-trip: one-line header `n,horizon,seed`, then
/// `time,index` rows.
void write_csv(const ClockEventLog& log, std::ostream& os);
ClockEventLog read_csv(std::istream& is);

} // namespace dynwalk::clocks
