#pragma once

#include <optional>

#include "hopfcorr/linalg.hpp"
#include "hopfcorr/presentation.hpp"

namespace hopfcorr {

/// Cocycle with finite-dimensional carrier: a *-representation pi and
/// vectors eta on generators, extended to words by
/// eta(g w) = pi(g) eta(w) + eta(g) epsilon(w). The carrier may be
/// equipped with a Hermitian positive-definite metric (GNS quotients use
/// the pivot-word Gram as metric; user cocycles default to the identity).
class Cocycle {
public:
    Cocycle(PresentationPtr pres, uint32_t dim, int cutoff, std::vector<Mat> pi_images,
            std::vector<Vec> eta_images, std::optional<Mat> metric = std::nullopt);

    const PresentationPtr& presentation() const { return pres_; }
    const Presentation& algebra() const { return *pres_; }
    Backend backend() const { return pres_->backend(); }
    uint32_t dim() const { return dim_; }
    int cutoff() const { return cutoff_; }
    const std::vector<Mat>& pi_images() const { return pi_; }
    const std::vector<Vec>& eta_images() const { return eta_; }
    const Mat& metric() const { return metric_; }
    bool metric_is_identity() const { return metric_identity_; }

    /// A copy of this cocycle over a different presentation object
    /// (typically the same algebra with another active alpha).
    Cocycle with_presentation(PresentationPtr pres) const;
    Cocycle with_cutoff(int cutoff) const;

    Vec eta(const Word& w) const; // throws DegreeExceeded beyond cutoff
    Vec eta(const NCPoly& p) const;
    Mat pi(const Word& w) const;
    Mat pi(const NCPoly& p) const;

    Scalar inner(const Vec& x, const Vec& y) const; // <x, y> = x^* M y
    Mat metric_adjoint(const Mat& a) const;         // M^{-1} a^* M

    /// eta on every basis word of degree <= max_deg, keyed by word.
    std::map<Word, Vec, WordLess> eta_table(int max_deg) const;

    static Cocycle zero(PresentationPtr pres, uint32_t dim, int cutoff);
    /// Block direct sum on the doubled carrier.
    static Cocycle direct_sum(const Cocycle& a, const Cocycle& b);

private:
    PresentationPtr pres_;
    uint32_t dim_;
    int cutoff_;
    std::vector<Mat> pi_;
    std::vector<Vec> eta_;
    Mat metric_;
    Mat metric_inv_;
    bool metric_identity_;
};

/// Relation respect: pi(lhs) = pi(rhs) and eta(lhs) = eta(rhs) per rewrite
/// rule, pi(g*) = pi(g)^dagger, metric validity.
Report check_cocycle_welldefined(const Cocycle& c);

/// alpha-reality <eta(a), eta(b)> = <eta(S_a(b)^*), eta(S_a(a^*))> on all
/// basis-word pairs up to max_deg; optional explicit scaling table
/// overrides the presentation's alpha.
Report is_alpha_real(const Cocycle& c, int max_deg,
                     const std::vector<Scalar>* scalings = nullptr);

/// The four eta/pi exchange identities that follow from the twisted
/// antipode relation, plus the agreement of the two defining-formula
/// forms, on basis words up to max_deg.
Report check_cocycle_identities(const Cocycle& c, int max_deg);

/// Span of eta over words <= cutoff versus the carrier; returns the
/// restricted cocycle when the span is proper (with a note), the input
/// otherwise.
std::pair<Cocycle, Report> restrict_to_span(const Cocycle& c);

} // namespace hopfcorr
