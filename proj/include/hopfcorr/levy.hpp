#pragma once

#include "hopfcorr/correspond.hpp"

namespace hopfcorr {

/// Splitting of a cocycle into its Gaussian part (joint epsilon-eigenspace
/// of pi) and the purely non-Gaussian remainder, with the induced
/// splitting L = L_G + L_R.
struct Decomposition {
    Mat P_G, P_R;
    Cocycle eta_G, eta_R;
    GeneratingFunctional L_G, L_R;
    Report report;
};

/// G as the intersection of Ker(pi(g) - eps(g) I) over generators, R as
/// the span of eta on K2 products inside the degree window; requires the
/// window span to complement G exactly (NotComplementary otherwise — the
/// truncation is too small). Pre: well-defined and alpha-real (throws
/// ValidationFailed).
Decomposition decompose(const Cocycle& c, int reality_deg = 2);

/// L(x* y) = 0 for x, y over a spanning set of K2 up to max_deg
/// (pairwise, which is complete for the span by polarization).
Report is_gaussian_functional(const GeneratingFunctional& L, int max_deg);

/// eta(vw) = eps(v) eta(w) + eta(v) eps(w) on word pairs up to max_deg.
Report is_gaussian_cocycle(const Cocycle& c, int max_deg);

/// The conjugate-linear maps T: eta(w) -> eta(S_a(w)^*) and
/// T': eta(w) -> eta(S_a(w^*)) on the eta-span: well-definedness across
/// linear dependencies, involutivity, mutual adjointness
/// <T eta(a), T' eta(b)> = <eta(b), eta(a)>, and invariance of eta(K2).
Report check_T_operators(const Cocycle& c, int max_deg);

/// Both component cocycles of a decomposition are alpha-real.
Report check_parts_alpha_real(const Decomposition& d, int max_deg);

} // namespace hopfcorr
