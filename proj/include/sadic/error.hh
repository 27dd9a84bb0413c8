/* error.hh -- exception types shared across the library
 */

#pragma once

#include <stdexcept>
#include <string>

namespace sadic {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configurable resource guard (state cap, prefix budget, ...) was exceeded.
struct GuardError : Error {
    explicit GuardError(const std::string& msg) : Error(msg) {}
};

/// Malformed textual input (substitution DSL, automaton JSON, CLI args).
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// A real-number decision could not be settled at the available precision.
struct PrecisionError : Error {
    explicit PrecisionError(const std::string& msg) : Error(msg) {}
};

/// Operation applied outside its domain (divergent word query, empty period,
/// element not in the semigroup, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

} // namespace sadic
