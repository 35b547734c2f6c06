#pragma once

#include <stdexcept>
#include <string>

namespace pmrc {

// Base for every library error. `kind()` is a stable machine-readable tag
// (the CLI maps it to exit codes and JSON error objects).
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define PMRC_DEFINE_ERROR(NAME, TAG)                                    \
    class NAME : public Error {                                         \
    public:                                                             \
        explicit NAME(const std::string& msg = TAG) : Error(TAG, msg) {} \
    }

PMRC_DEFINE_ERROR(FieldMismatch, "field-mismatch");
PMRC_DEFINE_ERROR(DivisionByZero, "division-by-zero");
PMRC_DEFINE_ERROR(DimensionMismatch, "dimension-mismatch");
PMRC_DEFINE_ERROR(SingularSystem, "singular-system");
PMRC_DEFINE_ERROR(FieldTooSmall, "field-too-small");
PMRC_DEFINE_ERROR(InvalidParams, "invalid-params");
PMRC_DEFINE_ERROR(ShortMessage, "short-message");
PMRC_DEFINE_ERROR(DecodeFailure, "decode-failure");
PMRC_DEFINE_ERROR(NotEnoughHelpers, "not-enough-helpers");
PMRC_DEFINE_ERROR(NotEnoughShares, "not-enough-shares");
PMRC_DEFINE_ERROR(TooManyErasures, "too-many-erasures");
PMRC_DEFINE_ERROR(BudgetExceeded, "budget-exceeded");
PMRC_DEFINE_ERROR(IoError, "io-error");
PMRC_DEFINE_ERROR(MalformedShareFile, "malformed-share-file");

#undef PMRC_DEFINE_ERROR

} // namespace pmrc
