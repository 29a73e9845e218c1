#pragma once

#include <stdexcept>
#include <string>

namespace rfde {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed mesh, abscissae, or incompatible discretization shapes.
class InvalidMesh : public Error {
public:
    using Error::Error;
};

/// A function was evaluated outside its domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The period dropped to (or below) the maximum delay.
class PeriodBelowDelay : public Error {
public:
    using Error::Error;
};

/// Newton or collocation matrix is numerically singular.
class SingularJacobian : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class NoCycleDetected : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

/// Bad command-line input, unknown problem name or parameter.
class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace rfde
