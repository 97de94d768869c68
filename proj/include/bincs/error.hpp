#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bincs {

enum class ErrorKind {
    NotPrimePower,
    UnsupportedOrder,
    FieldMismatch,
    LogOfZero,
    PowerOutOfRange,
    ShapeMismatch,
    TargetTooLarge,
    IndexOutOfRange,
    MalformedAlist,
    NotOddPrime,
    ZeroBeta,
    NotRegular,
    GirthViolation,
    ZeroColumn,
    TooFewColumns,
    BadShape,
    BadParams,
    DegenerateWeight,
    BadMu,
    NoFeasibleBase,
    BadK,
    SingularSupport,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Alist parse failure; `line()` is 1-based, 0 when the input ended early.
class MalformedAlist : public Error {
public:
    MalformedAlist(std::size_t line, const std::string& what)
        : Error(ErrorKind::MalformedAlist,
                "malformed alist (line " + std::to_string(line) + "): " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace bincs
