#include "eoregion/error.hpp"

namespace eoregion {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::NonPositiveMass: return "NonPositiveMass";
    case ErrorCode::OutOfRangeQ: return "OutOfRangeQ";
    case ErrorCode::DuplicateRow: return "DuplicateRow";
    case ErrorCode::MassNotNormalized: return "MassNotNormalized";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::BadLabel: return "BadLabel";
    case ErrorCode::BadSimplexVector: return "BadSimplexVector";
    case ErrorCode::UndefinedEO: return "UndefinedEO";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::SufficiencyNotMet: return "SufficiencyNotMet";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code)
{
}

UndefinedEOError::UndefinedEOError(int group)
    : Error(ErrorCode::UndefinedEO,
            "equal opportunity is undefined: P(Y=1, A=" + std::to_string(group) + ") = 0"),
      group_(group)
{
}

} // namespace eoregion
