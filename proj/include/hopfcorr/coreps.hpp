#pragma once

#include "hopfcorr/correspond.hpp"

namespace hopfcorr {

/// A labeled unitary corepresentation with positive diagonal Q data.
struct Corep {
    std::string label;
    uint32_t dim = 0;
    std::vector<NCPoly> entries; // row-major, dim x dim
    std::vector<Scalar> q;       // diagonal of Q, strictly positive

    const NCPoly& at(uint32_t i, uint32_t j) const { return entries.at(i * dim + j); }
};

class CorepFamily {
public:
    CorepFamily(PresentationPtr pres, std::vector<Corep> coreps)
        : pres_(std::move(pres)), coreps_(std::move(coreps)) {}

    const PresentationPtr& presentation() const { return pres_; }
    const std::vector<Corep>& coreps() const { return coreps_; }
    std::size_t size() const { return coreps_.size(); }

    /// Corep property Delta(u_ij) = sum_k u_ik (x) u_kj, unitarity under
    /// the rewrite system, positivity of Q.
    Report validate() const;

private:
    PresentationPtr pres_;
    std::vector<Corep> coreps_;
};

/// Per-corep matrices L^beta = (id (x) L)(U^beta).
struct MatrixFunctional {
    std::vector<std::string> labels;
    std::vector<Mat> mats;
};

/// Per-corep eta matrices: the stacked (dim_carrier * n) x n operator and
/// the n x n Gram (eta^beta)^* eta^beta.
struct MatrixCocycle {
    std::vector<std::string> labels;
    std::vector<Mat> stacked;
    std::vector<Mat> gram;
};

MatrixFunctional functional_matrix(const GeneratingFunctional& L, const CorepFamily& F);
MatrixCocycle cocycle_matrix(const Cocycle& c, const CorepFamily& F);

/// The matrix identity
/// L^b + Q^{-1/2} L^b Q^{1/2} = - Q^{-1/2} (eta^b)^* eta^b Q^{1/2}
/// entrywise (the conjugation only involves the rational ratios
/// sqrt(q_j/q_i)). Pre: c is tau_{i/2}-real and L is its functional.
Report qbeta_identity_check(const Cocycle& c, const GeneratingFunctional& L,
                            const CorepFamily& F);

/// Spectral pinching: zeroes every block coupling distinct Q^beta
/// eigenvalue groups. Idempotent; the identity Q leaves the input alone.
MatrixFunctional pinch_average(const MatrixFunctional& M, const CorepFamily& F);

struct PropernessResult {
    Report report;
    std::vector<std::string> exceptional;
};

/// Cocycle form: (eta^b)^* eta^b >= M I off the exceptional set.
PropernessResult properness_check(const Cocycle& c, const CorepFamily& F, const Scalar& M);
/// Functional form: L^b <= -M I off the exceptional set.
PropernessResult properness_check(const GeneratingFunctional& L, const CorepFamily& F,
                                  const Scalar& M);

/// eta (+) eta-bar on the doubled carrier, with eta-bar(a) = conj eta(R(a*))
/// and the opposite representation on the conjugate space; the result is
/// tau_{i/2}-real (verified, ValidationFailed otherwise). With a family
/// given, also verifies the per-corep PSD monotonicity
/// ((eta+eta-bar)^b)^* (eta+eta-bar)^b >= (eta^b)^* eta^b.
Cocycle conjugate_symmetrize(const Cocycle& c, int reality_deg = 2,
                             const CorepFamily* F = nullptr, Report* out = nullptr);

} // namespace hopfcorr
