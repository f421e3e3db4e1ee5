#pragma once

#include <cstdint>
#include <utility>
#include <vector>

// The sparse index sequence e_n = floor(exp(n / log n)) and the growth
// envelopes H it is paired with.  The sequence outgrows both the 64-bit
// integer range (n ~ 230) and the double range (n ~ 6200), so everything
// here is evaluated in the log domain, with exact integers on the side
// where they exist.

namespace dynwalk::erdos {

class ErdosSequence {
 public:
  /// Builds e_1 .. e_{n_max}.  Values beyond the uint64 range stay
  /// accessible through log_value(); value() raises a range error there.
  static ErdosSequence make(std::size_t n_max);

  std::size_t size() const { return n_max_; }

  /// ln(e_n).  Exact (from the integer) while e_n fits in 64 bits,
  /// the analytic exponent n/log(n) beyond.
  double log_value(std::size_t n) const;

  /// e_n as an integer.  Throws std::range_error once floor(exp(n/log n))
  /// exceeds the 64-bit range; never wraps.
  std::uint64_t value(std::size_t n) const;

  bool has_exact(std::size_t n) const;

  /// (e_{n+1} - e_n) * log(n) / e_n; tends to 1.
  double gap_ratio(std::size_t n) const;

 private:
  std::size_t n_max_ = 0;
  std::vector<std::uint64_t> exact_;   // e_1..e_k for the exactly representable prefix
  std::vector<double> log_values_;     // ln e_n for all n in [1, n_max]
};

/// Growth envelope H(t), nondecreasing on [1, inf).  Evaluation follows the
/// project log convention log x = ln(e v x) throughout.
struct GrowthEnvelope {
  enum class Family { ScaledLIL, Corollary, Tabulated };

  Family family = Family::ScaledLIL;
  double param = 1.0;  // c for ScaledLIL, a for Corollary
  bool clamped = false;
  // Tabulated: sorted (t, H(t)) pairs, H nondecreasing.
  std::vector<std::pair<double, double>> table;

  static GrowthEnvelope scaled_lil(double c, bool clamped = false);
  static GrowthEnvelope corollary(double a, bool clamped = false);
  static GrowthEnvelope tabulated(std::vector<std::pair<double, double>> pts,
                                  bool clamped = false);

  double eval(double t) const;
  /// Evaluate at t = exp(log_t); works for t beyond double range.
  /// Tabulated envelopes throw std::out_of_range outside their table.
  double eval_log(double log_t) const;
};

/// The pairwise decoupling envelope
/// f(H_j sqrt(e_j/(e_j-e_i)) - H_i sqrt(e_i/(e_j-e_i)) - (14/H_i) sqrt(e_i/(e_j-e_i)))
/// with f(z) = z^2 Phibar(z).  May be vacuous (Phibar > 1/2) at small
/// indices where the argument is negative.
double q_envelope(std::size_t i, std::size_t j, const GrowthEnvelope& H,
                  const ErdosSequence& seq);

/// Partial sums of sum_n H^2(e_n) Phibar(H(e_n)) up to n_max.
std::vector<double> sum_test_partials(const GrowthEnvelope& H, const ErdosSequence& seq,
                                      std::size_t n_max);

/// Term n of the sum above; pure function, valid for any n >= 1.
double sum_test_term(const GrowthEnvelope& H, const ErdosSequence& seq, std::size_t n);

} // namespace dynwalk::erdos
