#pragma once

#include <stdexcept>
#include <string>

namespace billiards {

enum class ErrorCode {
    AngleOutOfRange,
    DegenerateInput,
    DepthOverflow,
    DuplicateDirection,
    NotARefinement,
    PreconditionViolated,
    DomainError,
    IterationCap,
    IndexOutOfRange,
    InsufficientData,
    ParseError,
    InvariantViolation,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; the code tells callers (and the CLI
// exit-code mapping) what went wrong.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace billiards
