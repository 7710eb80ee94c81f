#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cwcmatch {

/// Malformed code file. Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A computation would exceed its configured enumeration or vertex budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The parameters are valid but the requested operation does not support them
/// (for example, even minimum distance passed to a constructor).
class Unsupported : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace cwcmatch
