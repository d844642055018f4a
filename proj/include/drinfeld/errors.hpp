#pragma once

#include <stdexcept>
#include <string>

namespace drinfeld {

/// Working precision ran out before a valuation or digit could be certified.
/// Callers may retry with a larger precision.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The request is mathematically sound but outside what this library
/// supports (wild ramification, inseparable torsion, missing residue field).
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A theorem hypothesis does not hold for the given input, e.g. a place over
/// infinity for a module of generic characteristic.
class HypothesisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An identity that must hold by construction failed. Always a bug.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A canonical-height decision did not settle within the iteration budget.
class IndeterminateError : public std::runtime_error {
public:
    IndeterminateError(const std::string& what, std::string trace)
        : std::runtime_error(what), trace_(std::move(trace)) {}
    const std::string& trace() const noexcept { return trace_; }

private:
    std::string trace_;
};

/// Malformed textual input (element strings, config documents).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line = -1)
        : std::runtime_error(line >= 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace drinfeld
