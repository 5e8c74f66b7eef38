#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fockrad {

/// A symbol or argument violates a structural invariant (overlapping pieces,
/// height outside [0,1], unsorted grid, ...). The message names the first
/// violated invariant.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed input file or stream; carries line diagnostics.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A proved inequality evaluated with slack below -1e-10. This is a sentinel
/// for a numerical bug, never a counterexample; the message carries a
/// diagnostic dump of the offending instance.
class SlackViolation : public std::runtime_error {
public:
    explicit SlackViolation(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fockrad
