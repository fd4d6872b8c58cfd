#pragma once

#include "hopfcorr/cocycle.hpp"
#include "hopfcorr/functional.hpp"

namespace hopfcorr {

/// The defining formula: L(w) for every basis word w of degree <= 2*budget,
/// by L(gamma(b)) = -<eta(S_a(b_(1))^*), eta(alpha(b_(2)))> at b = gamma^{-1}(w).
/// Both right-hand forms are evaluated and must agree (FormulaMismatch
/// otherwise; a non-well-defined input is the usual cause). budget defaults
/// to cutoff/2.
GeneratingFunctional functional_from_cocycle(const Cocycle& c, int budget = -1);

/// GNS construction: K1 Gram at degree cutoff, pivoted-LDL* null-space
/// quotient (rank r), carrier on the pivot words with the restricted Gram
/// as metric, pi defined by pi(g) eta(w) = eta(gw) - eta(g) eps(w) on the
/// representable range and minimal completion off it. Throws
/// NotConditionallyPositive / TruncationInconsistent.
Cocycle cocycle_from_functional(const GeneratingFunctional& L);

/// L -> GNS -> defining formula must reproduce L on all stored words; the
/// intermediate cocycle must be alpha-real.
Report roundtrip_check(const GeneratingFunctional& L);

/// Runs the defining formula unconditionally and reports the two-form
/// residual, hermitianity, coboundary residual and S_alpha-invariance of
/// the candidate functional. Never throws on a non-alpha-real input.
/// budget defaults to cutoff/2.
Report attempt_functional(const Cocycle& c, int budget = -1);

/// The 2-cocycle identity for phi~(a (x) b) = <eta(a^*), eta(b)> on
/// K1-basis triples up to max_deg.
Report two_cocycle_check(const Cocycle& c, int max_deg);

/// Corollary on scaling-group reality: a tau_{it}-real cocycle with
/// t != 1/2 is tau_{is}-real for every s; also verifies L = L o tau_{2it-i}
/// at the functional level. Throws HypothesisViolated when t = 1/2.
Report tau_reality_transfer(const Cocycle& c, const mpq_class& t, const mpq_class& s,
                            int max_deg);

} // namespace hopfcorr
