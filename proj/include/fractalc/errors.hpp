#pragma once

#include <stdexcept>
#include <string>

namespace fractalc {

/// Input outside the mathematical domain of an operation (x <= 0 for gamma,
/// t < base for an RL operator, evaluation outside a function's interval).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed arguments: non-monotone ladders, too few nodes, bad specs.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The requested closed form does not exist for this expression variant.
class UnsupportedVariant : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A structural invariant of an input object does not hold.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace fractalc
