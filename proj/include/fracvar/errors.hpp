#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracvar {

// Argument outside the mathematical domain of an operation
// (e.g. gamma of a non-positive number, fractional order outside (0,1]).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct OverflowError : std::range_error {
    using std::range_error::range_error;
};

// Expression source text did not parse; `position` is a 0-based offset
// into the source string.
struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

// Expression evaluation hit an invalid operand (ln of a non-positive
// value, 0 raised to a negative power, ...).
struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Grid mismatch, misaligned subinterval bounds, wrong sample counts.
struct GridError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Invalid problem statement; message names the offending field/key.
struct ProblemError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace fracvar
