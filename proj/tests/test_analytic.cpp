#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dynwalk/analytic.hpp"
#include "dynwalk/rng.hpp"

using namespace dynwalk::analytic;

namespace {

// Independent quadrature oracle for the Gaussian upper tail: composite
// Simpson over [x, x+40] with a step fine enough for ~1e-14 absolute.
double tail_quadrature(double x) {
  const double hi = x + 40.0;
  const std::size_t steps = 400000;
  const double h = (hi - x) / static_cast<double>(steps);
  auto density = [](double u) { return std::exp(-0.5 * u * u) / std::sqrt(2.0 * M_PI); };
  double acc = density(x) + density(hi);
  for (std::size_t k = 1; k < steps; ++k) {
    acc += density(x + static_cast<double>(k) * h) * (k % 2 ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

} // namespace

TEST_CASE("normal_sf matches a quadrature oracle") {
  for (double x : {-3.0, -1.0, 0.0, 0.5, 1.0, 2.0, 2.5, 4.0, 6.0}) {
    const double oracle = x >= 0 ? tail_quadrature(x) : 1.0 - tail_quadrature(-x);
    CHECK(normal_sf(x) == doctest::Approx(oracle).epsilon(1e-11));
  }
}

TEST_CASE("normal_sf basic identities") {
  CHECK(normal_sf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  for (double x : {0.3, 1.7, 2.9}) {
    CHECK(normal_sf(x) + normal_sf(-x) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(normal_sf(39.0) == 0.0); // double range exhausted
}

TEST_CASE("log_normal_sf continues the tail beyond erfc underflow") {
  for (double x : {1.0, 4.0, 7.9}) {
    CHECK(log_normal_sf(x) == doctest::Approx(std::log(normal_sf(x))).epsilon(1e-12));
  }
  // Mills sandwich: phi(x)/x (1 - 1/x^2) <= Phibar(x) <= phi(x)/x.
  for (double x : {10.0, 50.0, 1e3, 1e6}) {
    // log of phi(x)/x evaluated directly (the ratio itself underflows)
    const double upper = -0.5 * x * x - 0.5 * std::log(2.0 * M_PI) - std::log(x);
    const double lower = upper + std::log1p(-1.0 / (x * x));
    CHECK(log_normal_sf(x) <= upper);
    CHECK(log_normal_sf(x) >= lower);
  }
}

TEST_CASE("normal_quantile inverts the tail") {
  for (double p : {1e-12, 1e-6, 0.01, 0.3, 0.5, 0.7, 0.99, 1.0 - 1e-9}) {
    const double x = normal_quantile(p);
    CHECK(1.0 - normal_sf(x) == doctest::Approx(p).epsilon(1e-9));
  }
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0));
  CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
}

TEST_CASE("normal_quantile is strictly monotone on a fine sweep") {
  double prev = normal_quantile(1e-8);
  for (int k = 1; k <= 2000; ++k) {
    const double p = 1e-8 + (1.0 - 2e-8) * k / 2000.0;
    const double x = normal_quantile(p);
    CHECK(x > prev);
    prev = x;
  }
}

TEST_CASE("mills asymptotic brackets the tail from above") {
  for (double z : {1.0, 2.0, 5.0, 8.0}) {
    CHECK(normal_sf(z) < mills_asymptotic(z));
    CHECK(normal_sf(z) / mills_asymptotic(z) > 1.0 - 1.0 / (z * z));
  }
}

TEST_CASE("tail_f and the band arithmetic") {
  CHECK(tail_f(2.0) == doctest::Approx(4.0 * normal_sf(2.0)).epsilon(1e-15));
  // nonmonotone near the origin, decreasing later
  CHECK(tail_f(0.1) < tail_f(1.0));
  CHECK(tail_f(3.0) > tail_f(4.0));

  const auto band = tail_band(2.5);
  const double f = tail_f(2.5);
  CHECK(band.low == doctest::Approx(f / 9.0));
  CHECK(band.high == doctest::Approx(2.0 * f));
  CHECK(band.in_regime);
  CHECK_FALSE(tail_band(0.5).in_regime);

  TailBand slack{1.0 / 9.0, 2.0, 0.5, 2.0};
  const auto wide = tail_band(2.5, slack);
  CHECK(wide.low == doctest::Approx(0.5 * f / 9.0));
  CHECK(wide.high == doctest::Approx(4.0 * f));

  TailBand loose{1.0 / 9.0, 2.0, 0.5, 10.0};
  const auto clamped = tail_band(1.0, loose); // 20 f(1) > 1
  CHECK(clamped.high == 1.0);
  CHECK(clamped.raw_high > 1.0);
}

TEST_CASE("closed-form bounds evaluate their formulas") {
  const auto b = bernstein_bound(100, 0.1, 0.05);
  CHECK(b.raw ==
        doctest::Approx(2.0 * std::exp(-100.0 * 0.05 * 0.05 / (0.2 + 2.0 / 3.0 * 0.05))));
  CHECK(b.prob <= 1.0);

  const auto c = clock_uniform_bound(100000, 0.05, 0.2);
  CHECK(c.raw == doctest::Approx(512.0 / (0.04 * 0.0025) *
                                 std::exp(-3.0 * 0.008 * 100000.0 * 0.05 / 2304.0)));

  const auto pc = poisson_chernoff(10.0, 30.0);
  CHECK(pc.raw == doctest::Approx(std::exp(-10.0 - 30.0 * std::log(30.0 / (std::exp(1.0) * 10.0)))));
  CHECK(pc.prob <= 1.0);
}

TEST_CASE("tail shift envelopes hold pointwise") {
  dynwalk::rng::Rng gen(7);
  for (int k = 0; k < 200; ++k) {
    const double z = 1.0 + 4.0 * gen.uniform();
    const double eps = 2.0 * gen.uniform();
    CHECK(normal_sf(z + eps * z) <= phibar_shift_upper(z, eps) * (1.0 + 1e-12));
  }
  for (int k = 0; k < 200; ++k) {
    const double gamma = 0.1 + 2.0 * gen.uniform();
    const double z = std::sqrt(gamma) + 4.0 * gen.uniform();
    CHECK(normal_sf(z - gamma / z) <= phibar_shift_lower(z, gamma) * (1.0 + 1e-12));
  }
}

TEST_CASE("log conventions") {
  CHECK(log_ev(0.5) == doctest::Approx(1.0));
  CHECK(log_ev(std::exp(2.0)) == doctest::Approx(2.0));
  CHECK(loglog_ev(10.0) == doctest::Approx(1.0)); // ln 10 < e
  CHECK(loglog_ev(1e6) == doctest::Approx(std::log(std::log(1e6))));
  CHECK(loglog_ev_from_log(std::log(1e6)) == doctest::Approx(loglog_ev(1e6)));
  CHECK(loglog_ev_from_log(1e8) == doctest::Approx(std::log(1e8)));
}

TEST_CASE("window size") {
  CHECK(window_delta(2.0) == doctest::Approx(1.0 / 64.0));
  CHECK(window_delta(2.5) == doctest::Approx(1.0 / 100.0));
}

TEST_CASE("tail integral identity: int_0^inf Phibar(sqrt(t)) dt = 1/2") {
  // Substituting t = u^2 gives 2 int_0^inf u Phibar(u) du; Simpson on a
  // truncated range with an analytic tail bound.
  const double hi = 12.0;
  const std::size_t steps = 200000;
  const double h = hi / static_cast<double>(steps);
  auto g = [](double u) { return u * normal_sf(u); };
  double acc = g(0.0) + g(hi);
  for (std::size_t k = 1; k < steps; ++k) {
    acc += g(static_cast<double>(k) * h) * (k % 2 ? 4.0 : 2.0);
  }
  const double integral = 2.0 * acc * h / 3.0;
  CHECK(integral == doctest::Approx(0.5).epsilon(1e-9));
}
