#pragma once

#include <stdexcept>
#include <string>

namespace hirz {

/// Malformed or inconsistent input: parse errors, unknown names, violated
/// preconditions of an operation.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An arithmetic operation that has no result (division by zero, mixing
/// elements of different fields, inverting a zero divisor).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Interval refinement hit the configured bit budget without deciding a sign.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Geometric input below tolerance: degenerate polygon, non-convexity, a
/// sampler that ran out of attempts.
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hirz
