#pragma once

#include <stdexcept>
#include <string>

namespace spinelab {

// Base for all domain errors; carries a stable code used by the CLI to map
// failures to exit statuses (2 = validation, 3 = numeric).
struct Error : std::runtime_error {
    enum class Kind { validation, numeric };
    Kind kind;
    Error(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& w) : Error(Kind::validation, w) {}
};
struct NumericError : Error {
    explicit NumericError(const std::string& w) : Error(Kind::numeric, w) {}
};

#define SPINELAB_VALIDATION_ERROR(NAME)                                   \
    struct NAME : ValidationError {                                       \
        explicit NAME(const std::string& w) : ValidationError(#NAME ": " + w) {} \
    }
#define SPINELAB_NUMERIC_ERROR(NAME)                                      \
    struct NAME : NumericError {                                          \
        explicit NAME(const std::string& w) : NumericError(#NAME ": " + w) {} \
    }

SPINELAB_VALIDATION_ERROR(TrivialClass);
SPINELAB_VALIDATION_ERROR(SizeLimit);
SPINELAB_VALIDATION_ERROR(NotFilling);
SPINELAB_VALIDATION_ERROR(PreconditionFailed);
SPINELAB_VALIDATION_ERROR(InHull);

SPINELAB_NUMERIC_ERROR(DegenerateCrossing);
SPINELAB_NUMERIC_ERROR(DegenerateArrangement);
SPINELAB_NUMERIC_ERROR(NonHyperbolicGenerator);
SPINELAB_NUMERIC_ERROR(EllipticOrParabolic);
SPINELAB_NUMERIC_ERROR(SearchBudgetExceeded);
SPINELAB_NUMERIC_ERROR(StepUnderflow);
SPINELAB_NUMERIC_ERROR(LPNumerics);
SPINELAB_NUMERIC_ERROR(Diverged);
SPINELAB_NUMERIC_ERROR(AmbiguousSystoleSet);
SPINELAB_NUMERIC_ERROR(RankDeficient);
SPINELAB_NUMERIC_ERROR(NoConvergence);
SPINELAB_NUMERIC_ERROR(DegenerateTolerance);
SPINELAB_NUMERIC_ERROR(ProbeInconclusive);
SPINELAB_NUMERIC_ERROR(StepFailure);
SPINELAB_NUMERIC_ERROR(StalledFlow);

#undef SPINELAB_VALIDATION_ERROR
#undef SPINELAB_NUMERIC_ERROR

}  // namespace spinelab
