#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eoregion {

enum class ErrorCode {
    NonPositiveMass,
    OutOfRangeQ,
    DuplicateRow,
    MassNotNormalized,
    EmptyInput,
    BadLabel,
    BadSimplexVector,
    UndefinedEO,
    DimensionMismatch,
    TooLarge,
    ConstraintViolation,
    SufficiencyNotMet,
    InvalidArgument,
    Io,
    Parse,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Recoverable library failure. Broken internal invariants (a guaranteed
/// property that fails numerically) are reported as std::logic_error instead.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// P(Y=1, A=group) is zero, so the true-positive rate of that group is
/// undefined.
class UndefinedEOError : public Error {
public:
    explicit UndefinedEOError(int group);

    int group() const noexcept { return group_; }

private:
    int group_;
};

} // namespace eoregion
