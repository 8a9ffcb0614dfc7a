#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ineq {

enum class ErrorCode {
    Syntax,
    Domain,
    OrderOverflow,
    MaxSubdivisions,
    NonFiniteSample,
    ParamOutOfDomain,
    EqualArguments,
    UnsupportedOrder,
    EmptyGroup,
    Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base exception for every failure raised by the library. The code is what
/// callers branch on (CLI exit codes, sweep skip reasons); the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, const std::string& message)
        : Error(ErrorCode::Syntax,
                "syntax error at offset " + std::to_string(offset) + ": " + message),
          offset_(offset) {}

    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace ineq
