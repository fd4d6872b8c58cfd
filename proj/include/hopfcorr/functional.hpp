#pragma once

#include "hopfcorr/cocycle.hpp"
#include "hopfcorr/presentation.hpp"

namespace hopfcorr {

/// Functional given by its values on all normal-form basis words of degree
/// <= 2*cutoff (the Gram matrix over K1 at degree cutoff needs products of
/// degree 2*cutoff).
class GeneratingFunctional {
public:
    GeneratingFunctional(PresentationPtr pres, int cutoff,
                         std::map<Word, Scalar, WordLess> values);

    /// Builds the table from a per-word callback over the full stored range.
    static GeneratingFunctional tabulate(PresentationPtr pres, int cutoff,
                                         const std::function<Scalar(const Word&)>& f);

    const PresentationPtr& presentation() const { return pres_; }
    const Presentation& algebra() const { return *pres_; }
    Backend backend() const { return pres_->backend(); }
    int cutoff() const { return cutoff_; }
    int stored_degree() const { return 2 * cutoff_; }
    const std::map<Word, Scalar, WordLess>& values() const { return values_; }

    Scalar eval(const Word& w) const; // throws DegreeExceeded when absent
    Scalar eval(const NCPoly& p) const;

    GeneratingFunctional operator+(const GeneratingFunctional& o) const;
    static double distance(const GeneratingFunctional& a, const GeneratingFunctional& b);

private:
    PresentationPtr pres_;
    int cutoff_;
    std::map<Word, Scalar, WordLess> values_;
};

/// L(1) = 0, hermitianity on the stored range, conditional positivity of
/// the K1 Gram matrix at degree cutoff (LDL* certificate; the report also
/// carries the approximate minimal eigenvalue).
Report check_generating(const GeneratingFunctional& L);

/// L o S_alpha = L on all stored words; optional scaling table overrides
/// the presentation alpha.
Report is_salpha_invariant(const GeneratingFunctional& L,
                           const std::vector<Scalar>* scalings = nullptr);

/// The coboundary identity
/// L(ab) = eps(a) L(b) + L(a) eps(b) + <eta(a^*), eta(b)> on basis-word
/// pairs up to max_deg.
Report yields_coboundary(const GeneratingFunctional& L, const Cocycle& c, int max_deg);

/// K1 Gram matrix [L((w_i - eps(w_i))^* (w_j - eps(w_j)))] over the
/// non-unit basis words of degree <= deg.
Mat k1_gram(const GeneratingFunctional& L, int deg, std::vector<Word>* words_out = nullptr);

} // namespace hopfcorr
