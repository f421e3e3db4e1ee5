#pragma once

#include <cstdint>
#include <utility>

// Bernoulli estimates with Wilson score intervals and the band verdicts
// built on them.  All experiment runners report through these types.

namespace dynwalk::experiments {

/// Two-sided 99% normal quantile used project-wide for intervals.
inline constexpr double kZ99 = 2.5758293035489004;

std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t n,
                                          double z = kZ99);

struct Estimate {
  double p_hat = 0;
  std::uint64_t hits = 0;
  std::uint64_t n_samples = 0;
  double ci_low = 0;
  double ci_high = 1;
  std::uint64_t seed = 0;
};

Estimate make_estimate(std::uint64_t hits, std::uint64_t n, std::uint64_t seed);

/// Pools two estimates of the same quantity by summing counts.  Estimates
/// must come from disjoint sample sets (distinct seeds).
Estimate merge(const Estimate& a, const Estimate& b);

enum class Verdict { Pass, Fail, Underpowered, Info };
const char* verdict_name(Verdict v);

/// Underpowered when the interval is wider than the band; otherwise Pass
/// iff the point estimate lies in [band_low, band_high].
Verdict band_verdict(const Estimate& e, double band_low, double band_high);

} // namespace dynwalk::experiments
