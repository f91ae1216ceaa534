#pragma once

#include <stdexcept>
#include <string>

namespace starklab {

/// Malformed arguments: out-of-range tuples, non-prime p, even a_i, ...
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A desk-scale bound (group size, search cap, period length) was exceeded.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The working precision cannot certify the requested quantity.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A ball straddles a decision boundary. Distinct from a negative answer.
class UndecidedError : public std::runtime_error {
public:
    UndecidedError(const std::string& what, double radius)
        : std::runtime_error(what), radius_(radius) {}
    double radius() const { return radius_; }

private:
    double radius_;
};

/// A Rubin datum (S, V, T) violates one of its defining conditions.
class DatumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested module shape or group is outside what is implemented.
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal identity that must hold exactly did not.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// L-series order of vanishing could not be resolved at the truncation order.
class UnresolvedOrderError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An order-0 formula was requested for a character whose L-series vanishes at 0.
class WrongOrderError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace starklab
