#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperlift {

enum class ErrorKind {
    UnknownVariable,
    ValueOutOfRange,
    MissingVariable,
    SpaceMismatch,
    SpaceTooLarge,
    ExpansionTooLarge,
    QueryBlowup,
    NonSubsetClosedQuery,
    IterationBudgetExceeded,
    NotARefinement,
    SyntaxError,
    UndeclaredVariable,
    ElaborationError,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Every recoverable failure in the library is reported as an Error carrying
// its kind, so callers (the CLI in particular) can map kinds to exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace hyperlift
