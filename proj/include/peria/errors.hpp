#pragma once

#include <stdexcept>
#include <string>

namespace peria {

// Input file or word syntax problem.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

// Presentation violates a structural invariant (bad table, bad label, ...).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& m) : std::runtime_error(m) {}
};

// A configured resource cap (word closure, orientation count, ...) was hit.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& m) : std::runtime_error(m) {}
};

// A query needed data outside the certified part of a ball.
struct TrustViolation : std::runtime_error {
    explicit TrustViolation(const std::string& m) : std::runtime_error(m) {}
};

// An internal consistency assertion failed (these indicate real bugs or
// genuinely inconsistent geometric data and are never swallowed).
struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string& m) : std::runtime_error(m) {}
};

} // namespace peria
