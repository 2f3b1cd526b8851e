#pragma once

#include <stdexcept>
#include <string>

namespace dbr {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (for example |z| >= 1).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A documented precondition of an operation was violated by the caller.
class ContractError : public Error {
public:
    using Error::Error;
};

/// Evaluation at a pole (a Blaschke zero for the log-derivative, a circle atom on |z| = 1).
class PoleError : public Error {
public:
    using Error::Error;
};

/// Invalid data handed to a constructor or builder.
class ConstructionError : public Error {
public:
    using Error::Error;
};

/// Malformed textual input (JSON specs, region strings, complex literals).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure could not reach its target accuracy.
class NumericError : public Error {
public:
    NumericError(const std::string& what, double achieved_error)
        : Error(what + " (achieved error estimate " + std::to_string(achieved_error) + ")"),
          achieved_error_(achieved_error) {}

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

}  // namespace dbr
