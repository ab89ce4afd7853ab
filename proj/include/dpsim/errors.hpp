#pragma once

#include <stdexcept>
#include <string>

namespace dpsim {

/// Bad caller input: malformed sequence, inconsistent options, empty lists.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside a function's domain (gamma poles).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The numerics could not deliver the requested accuracy.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace dpsim
