#include "dynwalk/ou.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "dynwalk/estimate.hpp"
#include "dynwalk/rng.hpp"

namespace dynwalk::ou {

namespace {
constexpr std::uint64_t kOuStream = 0x6f75ULL;      // "ou"
constexpr std::uint64_t kSheetStream = 0x73686565ULL; // "shee"
} // namespace

OuPath sample_ou(double h, std::size_t m, std::uint64_t seed) {
  if (!(h > 0.0)) throw std::invalid_argument("sample_ou: h > 0 required");
  if (m < 1) throw std::invalid_argument("sample_ou: m >= 1 required");
  OuPath path;
  path.step = h;
  path.seed = seed;
  path.values.resize(m);
  rng::Rng gen(rng::derive_seed(seed, kOuStream, 0));
  const double rho = std::exp(-h);
  const double sd = std::sqrt(-std::expm1(-2.0 * h));
  path.values[0] = gen.normal();
  for (std::size_t i = 1; i < m; ++i) {
    path.values[i] = rho * path.values[i - 1] + sd * gen.normal();
  }
  return path;
}

double ou_grid_sup(const OuPath& path) {
  return *std::max_element(path.values.begin(), path.values.end());
}

SheetField sample_sheet_field(const std::vector<double>& s_grid,
                              const std::vector<double>& t_grid, std::uint64_t seed) {
  if (!std::is_sorted(s_grid.begin(), s_grid.end()) ||
      !std::is_sorted(t_grid.begin(), t_grid.end()))
    throw std::invalid_argument("sample_sheet_field: grids must be nondecreasing");
  if ((!s_grid.empty() && s_grid.front() < 0.0) || (!t_grid.empty() && t_grid.front() < 0.0))
    throw std::domain_error("sample_sheet_field: grids must be nonnegative");

  SheetField field;
  field.s_grid = s_grid;
  field.t_grid = t_grid;
  const std::size_t S = s_grid.size(), T = t_grid.size();
  field.u.assign(T * S, 0.0);
  if (S == 0 || T == 0) return field;

  // Sheet coordinates: x_i = e^{2 s_i} with an origin column/row prepended.
  std::vector<double> xs(S + 1), ys(T + 1);
  xs[0] = 0.0;
  for (std::size_t i = 0; i < S; ++i) xs[i + 1] = std::exp(2.0 * s_grid[i]);
  ys[0] = 0.0;
  for (std::size_t j = 0; j < T; ++j) ys[j + 1] = t_grid[j];

  // Independent N(0, area) cell increments, row-major in (t, s) order,
  // then a 2-D prefix sum gives B on the grid.
  rng::Rng gen(rng::derive_seed(seed, kSheetStream, 0));
  std::vector<double> b((T + 1) * (S + 1), 0.0);
  auto B = [&](std::size_t tj, std::size_t si) -> double& { return b[tj * (S + 1) + si]; };
  for (std::size_t tj = 1; tj <= T; ++tj) {
    for (std::size_t si = 1; si <= S; ++si) {
      const double area = (ys[tj] - ys[tj - 1]) * (xs[si] - xs[si - 1]);
      const double cell = area > 0.0 ? std::sqrt(area) * gen.normal() : 0.0;
      B(tj, si) = cell + B(tj - 1, si) + B(tj, si - 1) - B(tj - 1, si - 1);
    }
  }
  for (std::size_t tj = 1; tj <= T; ++tj) {
    for (std::size_t si = 1; si <= S; ++si) {
      field.u[(tj - 1) * S + (si - 1)] = std::exp(-s_grid[si - 1]) * B(tj, si);
    }
  }
  return field;
}

SupTailEstimate ou_sup_tail(double z, double h, std::uint64_t M, std::uint64_t seed) {
  if (!(h > 0.0 && h <= 0.5)) throw std::invalid_argument("ou_sup_tail: h in (0, 0.5] required");
  if (M < 1) throw std::invalid_argument("ou_sup_tail: M >= 1 required");
  const auto m = static_cast<std::size_t>(std::floor(1.0 / h + 1e-9)) + 1;

  SupTailEstimate est;
  est.h = h;
  est.n_samples = M;
  std::uint64_t coarse_hits = 0;
  for (std::uint64_t rep = 0; rep < M; ++rep) {
    rng::Rng gen(rng::derive_seed(seed, kOuStream, rep));
    const double rho = std::exp(-h);
    const double sd = std::sqrt(-std::expm1(-2.0 * h));
    double u = gen.normal();
    double sup_fine = u, sup_coarse = u;
    for (std::size_t i = 1; i < m; ++i) {
      u = rho * u + sd * gen.normal();
      sup_fine = std::max(sup_fine, u);
      if (i % 2 == 0) sup_coarse = std::max(sup_coarse, u);
    }
    if (sup_fine >= z) ++est.hits;
    if (sup_coarse >= z) ++coarse_hits;
  }
  est.p_hat = static_cast<double>(est.hits) / static_cast<double>(M);
  est.coarse_p_hat = static_cast<double>(coarse_hits) / static_cast<double>(M);
  std::tie(est.ci_low, est.ci_high) = experiments::wilson_interval(est.hits, M);
  return est;
}

} // namespace dynwalk::ou
