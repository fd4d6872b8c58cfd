#pragma once

#include <stdexcept>
#include <string>

#include "hopfcorr/report.hpp"

namespace hopfcorr {

struct HopfError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define HOPFCORR_DECLARE_ERROR(Name)                                 \
    struct Name : HopfError {                                        \
        explicit Name(const std::string& m) : HopfError(#Name ": " + m) {} \
    }

HOPFCORR_DECLARE_ERROR(ParseError);
HOPFCORR_DECLARE_ERROR(BackendMismatch);
HOPFCORR_DECLARE_ERROR(ContextMismatch);
HOPFCORR_DECLARE_ERROR(RankMismatch);
HOPFCORR_DECLARE_ERROR(RuleOrderViolation);
HOPFCORR_DECLARE_ERROR(CoassociativityViolation);
HOPFCORR_DECLARE_ERROR(IrrationalPower);
HOPFCORR_DECLARE_ERROR(SingularGamma);
HOPFCORR_DECLARE_ERROR(DegreeExceeded);
HOPFCORR_DECLARE_ERROR(FormulaMismatch);
HOPFCORR_DECLARE_ERROR(NotConditionallyPositive);
HOPFCORR_DECLARE_ERROR(TruncationInconsistent);
HOPFCORR_DECLARE_ERROR(NotComplementary);
HOPFCORR_DECLARE_ERROR(IllDefined);
HOPFCORR_DECLARE_ERROR(HypothesisViolated);

#undef HOPFCORR_DECLARE_ERROR

/// Thrown when loading an artifact whose validation suite fails;
/// carries the offending report.
struct ValidationFailed : HopfError {
    Report report;
    explicit ValidationFailed(Report r)
        : HopfError("ValidationFailed: " + r.summary()), report(std::move(r)) {}
};

} // namespace hopfcorr
