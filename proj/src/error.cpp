#include "ineq/error.hpp"

namespace ineq {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Syntax: return "SyntaxError";
        case ErrorCode::Domain: return "DomainError";
        case ErrorCode::OrderOverflow: return "OrderOverflow";
        case ErrorCode::MaxSubdivisions: return "MaxSubdivisions";
        case ErrorCode::NonFiniteSample: return "NonFiniteSample";
        case ErrorCode::ParamOutOfDomain: return "ParamOutOfDomain";
        case ErrorCode::EqualArguments: return "EqualArguments";
        case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
        case ErrorCode::EmptyGroup: return "EmptyGroup";
        case ErrorCode::Io: return "IoError";
    }
    return "Unknown";
}

}  // namespace ineq
