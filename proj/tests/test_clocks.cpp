#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "dynwalk/analytic.hpp"
#include "dynwalk/clocks.hpp"
#include "dynwalk/rng.hpp"

using namespace dynwalk::clocks;

TEST_CASE("sampler is deterministic and well formed") {
  const auto a = sample_clocks(500, 1.0, 42);
  const auto b = sample_clocks(500, 1.0, 42);
  REQUIRE(a.events.size() == b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    CHECK(a.events[i].time == b.events[i].time);
    CHECK(a.events[i].index == b.events[i].index);
  }
  for (std::size_t i = 1; i < a.events.size(); ++i) {
    CHECK(a.events[i].time > a.events[i - 1].time);
  }
  CHECK(a.events.front().time > 0.0);
  CHECK(a.events.back().time <= 1.0);
  for (const auto& e : a.events) CHECK(e.index < 500);
  CHECK(sample_clocks(500, 1.0, 43).events.size() != 0);
}

TEST_CASE("total event count concentrates around n * horizon") {
  // Poisson(n h): mean over reps within 5 sigma of the pooled SE.
  const std::uint64_t n = 1000;
  const int reps = 200;
  double total = 0;
  for (int r = 0; r < reps; ++r) {
    total += static_cast<double>(sample_clocks(n, 1.0, 1000 + r).pi_total());
  }
  const double mean = total / reps;
  const double se = std::sqrt(static_cast<double>(n)) / std::sqrt(static_cast<double>(reps));
  CHECK(std::fabs(mean - static_cast<double>(n)) < 5.0 * se);
}

TEST_CASE("marks are uniform across indices (chi-squared)") {
  const std::uint64_t n = 50;
  std::vector<double> counts(n, 0.0);
  double total = 0;
  for (int r = 0; r < 200; ++r) {
    const auto log = sample_clocks(n, 1.0, 7000 + r);
    for (const auto& e : log.events) {
      counts[e.index] += 1.0;
      total += 1.0;
    }
  }
  const double expect = total / static_cast<double>(n);
  double chi2 = 0;
  for (double c : counts) chi2 += (c - expect) * (c - expect) / expect;
  // 49 degrees of freedom: 5-sigma-ish ceiling ~ 49 + 5 sqrt(98)
  CHECK(chi2 < 49.0 + 5.0 * std::sqrt(98.0));
}

TEST_CASE("good event holds at desk scale") {
  int good = 0;
  for (int r = 0; r < 50; ++r) {
    if (sample_clocks(200, 1.0, 300 + r).g_indicator()) ++good;
  }
  CHECK(good == 50); // P{Poisson(n) > 3n} is astronomically small
}

TEST_CASE("count_changed window semantics") {
  ClockEventLog log;
  log.n = 10;
  log.horizon = 1.0;
  log.events = {{0.1, 3}, {0.2, 5}, {0.3, 3}, {0.7, 9}};
  CHECK(count_changed(log, 0.0, 1.0) == 3);  // indices 3, 5, 9
  CHECK(count_changed(log, 0.0, 0.25) == 2); // 3, 5
  CHECK(count_changed(log, 0.1, 0.3) == 2);  // strict left: 0.1 excluded, 0.2+0.3 in
  CHECK(count_changed(log, 0.3, 0.3) == 0);
  CHECK(count_changed(log, 0.35, 0.65) == 0);
  CHECK_THROWS_AS(count_changed(log, 0.5, 0.2), std::domain_error);
}

TEST_CASE("count_changed mean matches n(1 - e^{-gap})") {
  const std::uint64_t n = 2000;
  const double s = 0.2, t = 0.6;
  double total = 0;
  const int reps = 300;
  for (int r = 0; r < reps; ++r) {
    total += static_cast<double>(count_changed(sample_clocks(n, 1.0, 5000 + r), s, t));
  }
  const double mean = total / reps;
  const double target = expected_changed(n, s, t);
  // binomial variance per rep <= n p (1-p)
  const double p = target / static_cast<double>(n);
  const double se = std::sqrt(static_cast<double>(n) * p * (1 - p) / reps);
  CHECK(std::fabs(mean - target) < 5.0 * se);
}

TEST_CASE("deviation of an empty log is 1 when the window fits") {
  ClockEventLog log;
  log.n = 100;
  log.horizon = 1.0;
  const auto exact = uniform_deviation(log, 0.25, DeviationMode::ExactSweep);
  CHECK(exact.value == doctest::Approx(1.0));
  // no admissible window at all: sup over the empty set is 0
  const auto none = uniform_deviation(log, 2.0, DeviationMode::ExactSweep);
  CHECK(none.value == 0.0);
}

TEST_CASE("grid deviation never exceeds the exact sweep") {
  for (int r = 0; r < 50; ++r) {
    const auto log = sample_clocks(40, 1.0, 900 + r);
    const auto exact = uniform_deviation(log, 0.2, DeviationMode::ExactSweep);
    const auto grid = uniform_deviation(log, 0.2, DeviationMode::Grid, 0.5);
    CHECK(grid.value <= exact.value + 1e-12);
    CHECK(grid.grid_k == 81); // floor(1 + 8 / (0.5 * 0.2))
  }
}

TEST_CASE("fine grids converge to the exact sweep") {
  for (int r = 0; r < 20; ++r) {
    const auto log = sample_clocks(60, 1.0, 1200 + r);
    const auto exact = uniform_deviation(log, 0.3, DeviationMode::ExactSweep);
    // alpha -> 0 refines the grid
    const auto fine = uniform_deviation(log, 0.3, DeviationMode::Grid, 0.005);
    CHECK(fine.value == doctest::Approx(exact.value).epsilon(0.08));
  }
}

TEST_CASE("exact sweep cap refuses oversized logs") {
  const auto log = sample_clocks(2000, 1.0, 5);
  CHECK_THROWS_AS(uniform_deviation(log, 0.1, DeviationMode::ExactSweep, 0.5, 100),
                  std::runtime_error);
}

TEST_CASE("grid mode handles desk-scale logs") {
  const auto log = sample_clocks(20000, 1.0, 77);
  const auto dev = uniform_deviation(log, 0.05, DeviationMode::Grid, 0.2);
  CHECK(dev.value >= 0.0);
  CHECK(dev.value < 0.2); // fluctuation scale (n delta)^{-1/2} ~ 0.03
}

TEST_CASE("csv round trip") {
  const auto log = sample_clocks(64, 0.5, 321);
  std::stringstream ss;
  write_csv(log, ss);
  const auto back = read_csv(ss);
  CHECK(back.n == log.n);
  CHECK(back.horizon == log.horizon);
  CHECK(back.seed == log.seed);
  REQUIRE(back.events.size() == log.events.size());
  for (std::size_t i = 0; i < log.events.size(); ++i) {
    CHECK(back.events[i].time == log.events[i].time);
    CHECK(back.events[i].index == log.events[i].index);
  }
}
