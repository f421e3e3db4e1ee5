#pragma once

#include <cstdint>
#include <utility>

// Closed-form scalar bounds and Gaussian tail machinery used everywhere else.
// All functions are pure and thread-safe.

namespace dynwalk::analytic {

/// Gaussian upper tail Phibar(x) = P{N(0,1) >= x}.
/// Relative error <= 1e-12 for |x| <= 8; underflows to 0 near x ~ 38.6
/// (double range), use log_normal_sf beyond that.
double normal_sf(double x);

/// ln Phibar(x), valid for all finite x including deep tails (x up to 1e8).
double log_normal_sf(double x);

/// Inverse of the standard normal CDF (Wichura's PPND16, ~1e-15 accuracy).
/// p in (0,1).
double normal_quantile(double p);

/// First-order Mills asymptotic e^{-z^2/2} / (z sqrt(2 pi)), z > 0.
/// normal_sf(z)/mills_asymptotic(z) -> 1 from below as z -> infinity.
double mills_asymptotic(double z);

/// f(z) := z^2 Phibar(z).  Nonmonotone near 0, eventually decreasing;
/// do not assume monotonicity below z = 2.
double tail_f(double z);

/// Two-sided envelope coefficients for P{sup_t S_n(t) >= z sqrt(n)}.
/// The slack multipliers absorb the asymptotic (1+o(1)) factors.
struct TailBand {
  double lower_coeff = 1.0 / 9.0;
  double upper_coeff = 2.0;
  double slack_low = 1.0;   // in (0,1]
  double slack_high = 1.0;  // >= 1
};

struct BandInterval {
  double low = 0;
  double high = 1;
  double raw_high = 1;   // upper value before the probability clamp
  bool in_regime = true; // false when z < 1 (asymptotic regime violated)
};

/// [slack_low * lower_coeff * f(z), min(1, slack_high * upper_coeff * f(z))].
BandInterval tail_band(double z, const TailBand& band = {});

/// A probability bound together with its raw (unclamped) value.  The raw
/// value is often vacuous (> 1) at desk scale, which is itself informative.
struct BoundValue {
  double raw = 1;
  double prob = 1; // min(1, raw)
};

/// Bernstein tail for a Binomial(n, p) deviation of size n*lambda:
/// 2 exp(-n lambda^2 / (2p + (2/3) lambda)), clamped.
BoundValue bernstein_bound(std::uint64_t n, double p, double lambda);

/// Uniform clock-deviation bound (512 / (alpha^2 Delta^2)) *
/// exp(-3 alpha^3 n Delta / 2304); alpha in (0,1), Delta in (0,1].
BoundValue clock_uniform_bound(std::uint64_t n, double delta, double alpha);

/// Chernoff bound P{Poisson(mean) >= x} <= exp(-mean - x ln(x/(e*mean))).
BoundValue poisson_chernoff(double mean, double x);

/// Upper envelope for a multiplicative shift of the Gaussian tail:
/// Phibar(z + eps z) <= e^{-z^2 eps} Phibar(z) for z >= 1, eps >= 0.
double phibar_shift_upper(double z, double eps);

/// Converse envelope: Phibar(z - gamma/z) <= (1 + e^{2 gamma}) Phibar(z)
/// for z >= sqrt(gamma).
double phibar_shift_lower(double z, double gamma);

/// log x := ln(e v x), the project-wide log convention (so log x >= 1).
double log_ev(double x);
/// ln(e v log x), iterated with the same convention.
double loglog_ev(double x);
/// Same as loglog_ev but takes ln(t) directly; usable when t itself
/// overflows double range.
double loglog_ev_from_log(double log_t);

/// Window size Delta = 1/(16 z^2) used by the quenched experiments.
double window_delta(double z);

} // namespace dynwalk::analytic
