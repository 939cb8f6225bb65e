#pragma once

#include <stdexcept>
#include <string>

namespace reinhardt {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated by the caller (arity, sign, range).
class ContractViolation : public Error {
    using Error::Error;
};

/// Evaluation produced a non-finite value or hit a guard.
class EvaluationError : public Error {
    using Error::Error;
};

/// Input data (exponent tuple, coefficient table, config) was rejected.
class RejectionError : public Error {
    using Error::Error;
};

/// The operation is well defined but not supported for this configuration.
class UnsupportedConfiguration : public Error {
    using Error::Error;
};

namespace detail {

inline void require(bool ok, const std::string& what)
{
    if (!ok) throw ContractViolation(what);
}

} // namespace detail
} // namespace reinhardt
