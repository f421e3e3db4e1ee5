#include "dynwalk/erdos.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dynwalk/analytic.hpp"

namespace dynwalk::erdos {

using analytic::log_ev;
using analytic::loglog_ev_from_log;
using analytic::normal_sf;
using analytic::tail_f;

ErdosSequence ErdosSequence::make(std::size_t n_max) {
  if (n_max < 1) throw std::invalid_argument("ErdosSequence: n_max >= 1 required");
  ErdosSequence seq;
  seq.n_max_ = n_max;
  seq.log_values_.resize(n_max);
  // ln(2^63) boundary for the exactly representable prefix.
  const double kLogU64 = 63.0 * std::log(2.0);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double exponent = static_cast<double>(n) / log_ev(static_cast<double>(n));
    if (exponent < kLogU64 - 1e-9) {
      // Long double exp gives enough margin for the floor to be exact.
      const long double v = std::floor(std::exp(static_cast<long double>(exponent)));
      const auto iv = static_cast<std::uint64_t>(v);
      seq.exact_.push_back(iv);
      seq.log_values_[n - 1] = std::log(static_cast<double>(iv));
    } else {
      seq.log_values_[n - 1] = exponent;
    }
  }
  return seq;
}

double ErdosSequence::log_value(std::size_t n) const {
  if (n < 1 || n > n_max_) throw std::out_of_range("ErdosSequence::log_value: index");
  return log_values_[n - 1];
}

std::uint64_t ErdosSequence::value(std::size_t n) const {
  if (n < 1 || n > n_max_) throw std::out_of_range("ErdosSequence::value: index");
  if (n > exact_.size())
    throw std::range_error("ErdosSequence::value: e_n exceeds the 64-bit integer range");
  return exact_[n - 1];
}

bool ErdosSequence::has_exact(std::size_t n) const {
  return n >= 1 && n <= exact_.size();
}

double ErdosSequence::gap_ratio(std::size_t n) const {
  if (n + 1 > n_max_) throw std::out_of_range("ErdosSequence::gap_ratio: n+1 > n_max");
  const double logn = log_ev(static_cast<double>(n));
  if (has_exact(n + 1)) {
    const auto a = value(n), b = value(n + 1);
    return static_cast<double>(b - a) * logn / static_cast<double>(a);
  }
  // (e_{n+1} - e_n)/e_n = expm1(ln e_{n+1} - ln e_n); floors are negligible
  // at this size.
  return std::expm1(log_value(n + 1) - log_value(n)) * logn;
}

GrowthEnvelope GrowthEnvelope::scaled_lil(double c, bool clamped) {
  if (!(c > 0.0)) throw std::invalid_argument("GrowthEnvelope: c must be positive");
  GrowthEnvelope h;
  h.family = Family::ScaledLIL;
  h.param = c;
  h.clamped = clamped;
  return h;
}

GrowthEnvelope GrowthEnvelope::corollary(double a, bool clamped) {
  GrowthEnvelope h;
  h.family = Family::Corollary;
  h.param = a;
  h.clamped = clamped;
  return h;
}

GrowthEnvelope GrowthEnvelope::tabulated(std::vector<std::pair<double, double>> pts,
                                         bool clamped) {
  if (pts.size() < 2) throw std::invalid_argument("GrowthEnvelope: table needs >= 2 points");
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!(pts[i].first > pts[i - 1].first))
      throw std::invalid_argument("GrowthEnvelope: table abscissae must be increasing");
    if (pts[i].second < pts[i - 1].second)
      throw std::invalid_argument("GrowthEnvelope: H must be nondecreasing");
  }
  GrowthEnvelope h;
  h.family = Family::Tabulated;
  h.clamped = clamped;
  h.table = std::move(pts);
  return h;
}

double GrowthEnvelope::eval(double t) const {
  return eval_log(std::log(std::max(t, 1.0)));
}

double GrowthEnvelope::eval_log(double log_t) const {
  const double ll = loglog_ev_from_log(log_t); // loglog t under the e-v-x convention
  double h;
  switch (family) {
    case Family::ScaledLIL:
      h = param * std::sqrt(2.0 * ll);
      break;
    case Family::Corollary: {
      const double lll = log_ev(ll);
      const double inner = 2.0 * ll + param * lll;
      h = std::sqrt(std::max(0.0, inner));
      break;
    }
    case Family::Tabulated: {
      // Linear interpolation in ln t between knots.
      const double lo = std::log(std::max(table.front().first, 1.0));
      const double hi = std::log(table.back().first);
      if (log_t < lo - 1e-12 || log_t > hi + 1e-12)
        throw std::out_of_range("GrowthEnvelope: t outside tabulated range");
      const double x = std::clamp(log_t, lo, hi);
      std::size_t i = 1;
      while (i + 1 < table.size() && std::log(table[i].first) < x) ++i;
      const double x0 = std::log(std::max(table[i - 1].first, 1.0));
      const double x1 = std::log(table[i].first);
      const double w = (x1 > x0) ? (x - x0) / (x1 - x0) : 0.0;
      h = table[i - 1].second + w * (table[i].second - table[i - 1].second);
      break;
    }
  }
  if (clamped) {
    const double root = std::sqrt(ll);
    h = std::clamp(h, root, 2.0 * root);
  }
  return h;
}

double q_envelope(std::size_t i, std::size_t j, const GrowthEnvelope& H,
                  const ErdosSequence& seq) {
  if (!(j > i && i >= 1)) throw std::domain_error("q_envelope: j > i >= 1 required");
  const double li = seq.log_value(i);
  const double lj = seq.log_value(j);
  const double hi = H.eval_log(li);
  const double hj = H.eval_log(lj);
  // e_j/(e_j - e_i) and e_i/(e_j - e_i) from the log-gap; exact integers
  // are unnecessary here since only ratios enter.
  const double r = -std::expm1(li - lj); // (e_j - e_i)/e_j in (0,1)
  const double ej_frac = 1.0 / r;
  const double ei_frac = std::exp(li - lj) / r;
  const double arg =
      hj * std::sqrt(ej_frac) - hi * std::sqrt(ei_frac) - (14.0 / hi) * std::sqrt(ei_frac);
  // f extended through 0: z^2 Phibar(z) is fine for negative arguments,
  // where the envelope is simply vacuous.
  return arg * arg * normal_sf(arg);
}

double sum_test_term(const GrowthEnvelope& H, const ErdosSequence& seq, std::size_t n) {
  const double h = H.eval_log(seq.log_value(n));
  return h * h * normal_sf(h);
}

std::vector<double> sum_test_partials(const GrowthEnvelope& H, const ErdosSequence& seq,
                                      std::size_t n_max) {
  if (n_max > seq.size()) throw std::out_of_range("sum_test_partials: n_max > sequence size");
  std::vector<double> partials(n_max);
  double acc = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    acc += sum_test_term(H, seq, n);
    partials[n - 1] = acc;
  }
  return partials;
}

} // namespace dynwalk::erdos
