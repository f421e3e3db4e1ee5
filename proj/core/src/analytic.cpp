#include "dynwalk/analytic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dynwalk::analytic {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kLnSqrt2Pi = 0.9189385332046727; // ln sqrt(2 pi)

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::domain_error(std::string(what) + ": non-finite input");
}

// Mills ratio Phibar(x)/phi(x) via the Laplace continued fraction
// x + 1/(x + 2/(x + 3/(...))), evaluated by backward recurrence.
// Accurate to full double precision for x >= 4.
double mills_ratio_cf(double x) {
  double cf = 0.0;
  for (int k = 64; k >= 1; --k) {
    cf = static_cast<double>(k) / (x + cf);
  }
  return 1.0 / (x + cf);
}

} // namespace

double normal_sf(double x) {
  require_finite(x, "normal_sf");
  return 0.5 * std::erfc(x / kSqrt2);
}

double log_normal_sf(double x) {
  require_finite(x, "log_normal_sf");
  if (x < 8.0) {
    return std::log(normal_sf(x));
  }
  // log phi(x) + log R(x); avoids the erfc underflow near x ~ 38.6.
  return -0.5 * x * x - kLnSqrt2Pi + std::log(mills_ratio_cf(x));
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p must be in (0,1)");
  // Wichura, Applied Statistics 37 (1988), algorithm AS 241 (PPND16).
  static constexpr double a[8] = {
      3.3871328727963666080e+0, 1.3314166789178437745e+2, 1.9715909503065514427e+3,
      1.3731693765509461125e+4, 4.5921953931549871457e+4, 6.7265770927008700853e+4,
      3.3430575583588128105e+4, 2.5090809287301226727e+3};
  static constexpr double b[8] = {
      1.0, 4.2313330701600911252e+1, 6.8718700749205790830e+2, 5.3941960214247511077e+3,
      2.1213794301586595867e+4, 3.9307895800092710610e+4, 2.8729085735721942674e+4,
      5.2264952788528545610e+3};
  static constexpr double c[8] = {
      1.42343711074968357734e+0, 4.63033784615654529590e+0, 5.76949722146069140550e+0,
      3.64784832476320460504e+0, 1.27045825245236838258e+0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4};
  static constexpr double d[8] = {
      1.0, 2.05319162663775882187e+0, 1.67638483018380384940e+0, 6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9};
  static constexpr double e[8] = {
      6.65790464350110377720e+0, 5.46378491116411436990e+0, 1.78482653991729133580e+0,
      2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static constexpr double f[8] = {
      1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-6, 1.42151175831644588870e-7,
      2.04426310338993978564e-15};

  auto poly = [](const double* k, double r) {
    return ((((((k[7] * r + k[6]) * r + k[5]) * r + k[4]) * r + k[3]) * r + k[2]) * r + k[1]) * r +
           k[0];
  };

  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * poly(a, r) / poly(b, r);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = poly(c, r) / poly(d, r);
  } else {
    r -= 5.0;
    x = poly(e, r) / poly(f, r);
  }
  return (q < 0.0) ? -x : x;
}

double mills_asymptotic(double z) {
  require_finite(z, "mills_asymptotic");
  if (z <= 0.0) throw std::domain_error("mills_asymptotic: z must be positive");
  return std::exp(-0.5 * z * z - kLnSqrt2Pi) / z;
}

double tail_f(double z) {
  require_finite(z, "tail_f");
  if (z <= 0.0) throw std::domain_error("tail_f: z must be positive");
  return z * z * normal_sf(z);
}

BandInterval tail_band(double z, const TailBand& band) {
  require_finite(z, "tail_band");
  if (!(band.lower_coeff > 0.0 && band.lower_coeff < band.upper_coeff))
    throw std::domain_error("tail_band: need 0 < lower_coeff < upper_coeff");
  if (!(band.slack_low > 0.0 && band.slack_low <= 1.0 && band.slack_high >= 1.0))
    throw std::domain_error("tail_band: need 0 < slack_low <= 1 <= slack_high");
  const double f = tail_f(z);
  BandInterval out;
  out.low = band.slack_low * band.lower_coeff * f;
  out.raw_high = band.slack_high * band.upper_coeff * f;
  out.high = std::min(1.0, out.raw_high);
  out.in_regime = (z >= 1.0);
  return out;
}

BoundValue bernstein_bound(std::uint64_t n, double p, double lambda) {
  if (n < 1) throw std::domain_error("bernstein_bound: n >= 1 required");
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("bernstein_bound: p must be in [0,1]");
  if (!(lambda >= 0.0)) throw std::domain_error("bernstein_bound: lambda must be >= 0");
  BoundValue out;
  const double denom = 2.0 * p + (2.0 / 3.0) * lambda;
  if (denom == 0.0) {
    out.raw = (lambda == 0.0) ? 2.0 : 0.0;
  } else {
    out.raw = 2.0 * std::exp(-static_cast<double>(n) * lambda * lambda / denom);
  }
  out.prob = std::min(1.0, out.raw);
  return out;
}

BoundValue clock_uniform_bound(std::uint64_t n, double delta, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("clock_uniform_bound: alpha must be in (0,1)");
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::domain_error("clock_uniform_bound: Delta must be in (0,1]");
  BoundValue out;
  const double prefactor = 512.0 / (alpha * alpha * delta * delta);
  const double exponent = -3.0 * alpha * alpha * alpha * static_cast<double>(n) * delta / 2304.0;
  out.raw = prefactor * std::exp(exponent);
  out.prob = std::min(1.0, out.raw);
  return out;
}

BoundValue poisson_chernoff(double mean, double x) {
  if (!(mean > 0.0) || !(x > 0.0))
    throw std::domain_error("poisson_chernoff: mean and x must be positive");
  BoundValue out;
  out.raw = std::exp(-mean - x * std::log(x / (std::exp(1.0) * mean)));
  out.prob = std::min(1.0, out.raw);
  return out;
}

double phibar_shift_upper(double z, double eps) {
  if (!(z >= 1.0)) throw std::domain_error("phibar_shift_upper: z >= 1 required");
  if (!(eps >= 0.0)) throw std::domain_error("phibar_shift_upper: eps >= 0 required");
  return std::exp(-z * z * eps) * normal_sf(z);
}

double phibar_shift_lower(double z, double gamma) {
  if (!(gamma > 0.0)) throw std::domain_error("phibar_shift_lower: gamma > 0 required");
  if (!(z >= std::sqrt(gamma)))
    throw std::domain_error("phibar_shift_lower: z >= sqrt(gamma) required");
  return (1.0 + std::exp(2.0 * gamma)) * normal_sf(z);
}

double log_ev(double x) {
  const double e = std::exp(1.0);
  return std::log(std::max(e, x));
}

double loglog_ev(double x) {
  return log_ev(log_ev(x));
}

double loglog_ev_from_log(double log_t) {
  return log_ev(std::max(1.0, log_t));
}

double window_delta(double z) {
  if (!(z > 0.0)) throw std::domain_error("window_delta: z must be positive");
  return 1.0 / (16.0 * z * z);
}

} // namespace dynwalk::analytic
