#pragma once

#include <cstddef>

#include "dynwalk/erdos.hpp"

// Convergence classification of the growth-envelope integrals
//   J(H)      = int_1^inf H^4(t) Phibar(H(t)) / t dt          (dynamical)
//   J_stat(H) = int_1^inf H(t) e^{-H^2(t)/2} / t dt           (static)
// and of the equivalent sparse sum  sum_n H^2(e_n) Phibar(H(e_n)).
//
// Parametric families are classified by symbolic tail-exponent analysis
// (the integrals diverge only logarithmically slowly, so quadrature can
// rarely decide them); tabulated envelopes fall back to adaptive
// quadrature with explicit divergence/convergence thresholds.

namespace dynwalk::integral {

enum class Classification { Finite, Divergent, Inconclusive };
enum class Method { SymbolicTail, Quadrature };

/// Which algebraic form of the integrand to evaluate.  Both must agree in
/// classification; the exponential form is the Mills-equivalent rewrite.
enum class IntegrandForm { TailFunction, ExponentialEquivalent };

struct QuadratureBudget {
  double divergence_threshold = 1e3; // partial integral above this => Divergent
  int max_doublings = 20;            // upper limits 10^(2^k), k <= max_doublings
  double tail_rel_tol = 1e-9;        // relative tail increment below this => Finite
  double simpson_rel_tol = 1e-8;
};

struct IntegralVerdict {
  Classification classification = Classification::Inconclusive;
  double partial_value = 0.0;
  Method method = Method::Quadrature;
};

IntegralVerdict integral_test(const erdos::GrowthEnvelope& H, const QuadratureBudget& budget = {});
IntegralVerdict static_erdos_test(const erdos::GrowthEnvelope& H,
                                  const QuadratureBudget& budget = {});

/// Quadrature-only route (no symbolic shortcut); used directly for
/// tabulated envelopes and as the independent cross-check in tests.
IntegralVerdict integral_test_quadrature(const erdos::GrowthEnvelope& H, IntegrandForm form,
                                         bool static_variant, const QuadratureBudget& budget);

/// Classifies the sparse sum; the classification agrees with
/// integral_test on the parametric families by shared tail analysis,
/// and the partial-sum route is exposed through erdos::sum_test_partials.
IntegralVerdict sum_test(const erdos::GrowthEnvelope& H, const erdos::ErdosSequence& seq,
                         std::size_t n_max);

/// Fitted local slope d ln(block sum) / d lnln(N) of the dyadic tail
/// blocks of the sparse sum; a finite-n growth diagnostic only.
double sum_test_loglog_slope(const erdos::GrowthEnvelope& H, const erdos::ErdosSequence& seq,
                             std::size_t n_max);

} // namespace dynwalk::integral
