#include "markovpi/error.hpp"

namespace markovpi {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::OrderTooLarge: return "OrderTooLarge";
        case ErrorCode::NonFiniteInput: return "NonFiniteInput";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::DegenerateWeights: return "DegenerateWeights";
        case ErrorCode::InvalidIndex: return "InvalidIndex";
        case ErrorCode::InvalidProbability: return "InvalidProbability";
        case ErrorCode::DegenerateData: return "DegenerateData";
        case ErrorCode::EmptyAcceptedSet: return "EmptyAcceptedSet";
        case ErrorCode::WarmupTooShort: return "WarmupTooShort";
        case ErrorCode::ReplicationFailures: return "ReplicationFailures";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::EmptyFile: return "EmptyFile";
        case ErrorCode::Usage: return "Usage";
    }
    return "Unknown";
}

ErrorCategory category_of(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Usage:
        case ErrorCode::InvalidArgument:
            return ErrorCategory::Usage;
        case ErrorCode::OrderTooLarge:
        case ErrorCode::NonFiniteInput:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::InvalidIndex:
        case ErrorCode::InvalidProbability:
        case ErrorCode::DegenerateData:
        case ErrorCode::WarmupTooShort:
        case ErrorCode::ParseError:
        case ErrorCode::EmptyFile:
            return ErrorCategory::Data;
        case ErrorCode::DegenerateWeights:
        case ErrorCode::EmptyAcceptedSet:
        case ErrorCode::ReplicationFailures:
            return ErrorCategory::Numerical;
    }
    return ErrorCategory::Internal;
}

}  // namespace markovpi
