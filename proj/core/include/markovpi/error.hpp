#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace markovpi {

enum class ErrorCode {
    OrderTooLarge,
    NonFiniteInput,
    InvalidArgument,
    DimensionMismatch,
    DegenerateWeights,
    InvalidIndex,
    InvalidProbability,
    DegenerateData,
    EmptyAcceptedSet,
    WarmupTooShort,
    ReplicationFailures,
    ParseError,
    EmptyFile,
    Usage,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Broad failure class, used by the CLI to pick an exit status.
enum class ErrorCategory { Usage, Data, Numerical, Internal };

ErrorCategory category_of(ErrorCode code) noexcept;

/**
 * @brief Exception carrying a machine-readable error code.
 *
 * Every failure raised by the library is an Error; callers switch on code()
 * rather than parsing what().
 */
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace markovpi
