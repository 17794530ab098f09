#include "billiards/errors.hpp"

namespace billiards {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::AngleOutOfRange: return "AngleOutOfRange";
        case ErrorCode::DegenerateInput: return "DegenerateInput";
        case ErrorCode::DepthOverflow: return "DepthOverflow";
        case ErrorCode::DuplicateDirection: return "DuplicateDirection";
        case ErrorCode::NotARefinement: return "NotARefinement";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::IterationCap: return "IterationCap";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

}  // namespace billiards
