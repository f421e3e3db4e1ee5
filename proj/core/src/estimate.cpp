#include "dynwalk/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace dynwalk::experiments {

std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t n, double z) {
  if (n == 0) throw std::invalid_argument("wilson_interval: n >= 1 required");
  if (hits > n) throw std::invalid_argument("wilson_interval: hits > n");
  const double nd = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nd;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nd;
  const double center = (p + z2 / (2.0 * nd)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

Estimate make_estimate(std::uint64_t hits, std::uint64_t n, std::uint64_t seed) {
  Estimate e;
  e.hits = hits;
  e.n_samples = n;
  e.p_hat = static_cast<double>(hits) / static_cast<double>(n);
  std::tie(e.ci_low, e.ci_high) = wilson_interval(hits, n);
  e.seed = seed;
  return e;
}

Estimate merge(const Estimate& a, const Estimate& b) {
  Estimate e = make_estimate(a.hits + b.hits, a.n_samples + b.n_samples, a.seed);
  return e;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Underpowered: return "underpowered";
    case Verdict::Info: return "info";
  }
  return "?";
}

Verdict band_verdict(const Estimate& e, double band_low, double band_high) {
  if (band_high < band_low) throw std::invalid_argument("band_verdict: empty band");
  if (e.ci_high - e.ci_low > band_high - band_low) return Verdict::Underpowered;
  return (e.p_hat >= band_low && e.p_hat <= band_high) ? Verdict::Pass : Verdict::Fail;
}

} // namespace dynwalk::experiments
