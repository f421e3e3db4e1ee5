#pragma once

#include <cstdint>
#include <vector>

// The stationary Ornstein-Uhlenbeck limit objects: the one-parameter
// process U(s) and the two-parameter field U_t(s) = e^{-s} B(e^{2s}, t)
// driven by a Brownian sheet B.

namespace dynwalk::ou {

struct OuPath {
  double step = 0;            // grid spacing h
  std::vector<double> values; // U(0), U(h), U(2h), ...
  std::uint64_t seed = 0;
};

/// Stationary OU process with unit variance and covariance e^{-|s-s'|},
/// sampled exactly on the uniform grid {0, h, ..., (m-1) h} by the AR(1)
/// recursion U(s+h) = e^{-h} U(s) + sqrt(1 - e^{-2h}) xi.
OuPath sample_ou(double h, std::size_t m, std::uint64_t seed);

/// max over the sampled grid points.
double ou_grid_sup(const OuPath& path);

struct SheetField {
  std::vector<double> s_grid;
  std::vector<double> t_grid;
  std::vector<double> u; // row-major [t][s]
  double at(std::size_t ti, std::size_t si) const { return u[ti * s_grid.size() + si]; }
};

/// Exact finite-dimensional sample of the field e^{-s} B(e^{2s}, t) on the
/// given grids, via independent Gaussian cell increments of the sheet on
/// the induced rectangle partition.  Covariance of the result:
/// E U_t(s) U_{t'}(s') = e^{-|s-s'|} min(t, t').
SheetField sample_sheet_field(const std::vector<double>& s_grid,
                              const std::vector<double>& t_grid, std::uint64_t seed);

struct SupTailEstimate {
  double p_hat = 0;
  std::uint64_t hits = 0;
  std::uint64_t n_samples = 0;
  double ci_low = 0, ci_high = 1; // Wilson 99%
  double h = 0;                   // grid spacing used
  double coarse_p_hat = 0;        // same paths restricted to spacing 2h
};

/// P{sup_{s in [0,1]} U(s) >= z} estimated on the h-grid, M paths.  Each
/// path is sampled at spacing h and also read off at spacing 2h (the AR(1)
/// restriction is exact), so coarse_p_hat isolates discretization bias
/// from Monte Carlo noise: both estimates share every sample.
SupTailEstimate ou_sup_tail(double z, double h, std::uint64_t M, std::uint64_t seed);

} // namespace dynwalk::ou
