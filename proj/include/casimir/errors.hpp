#pragma once

#include <charconv>
#include <stdexcept>
#include <string>

namespace casimir {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shortest round-trip decimal form, for error messages and CSV alike.
inline std::string num_str(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

// Structurally well-formed input that violates a contract (table ordering,
// negative absorption, inconsistent tails, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Malformed input text; carries a 1-based line number when known.
struct ParseError : Error {
    explicit ParseError(const std::string& what, long line = 0)
        : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what), line_no(line) {}
    long line_no;
};

struct UnsupportedModel : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

// Contour integration diagnostics.
struct ContourTooClose : Error {
    using Error::Error;
};

struct NonIntegerResult : Error {
    using Error::Error;
};

struct SymmetryViolation : Error {
    using Error::Error;
};

} // namespace casimir
