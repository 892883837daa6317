#pragma once

#include <stdexcept>
#include <string>

namespace coamoeba {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The caller handed us data that violates a documented precondition.
/// The CLI maps this family to exit code 2.
class InvalidInput : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public InvalidInput {
public:
    SingularMatrix() : InvalidInput("SingularMatrix: determinant is zero") {}
};

class DegenerateSimplex : public InvalidInput {
public:
    DegenerateSimplex()
        : InvalidInput("DegenerateSimplex: exponent points do not span an n-simplex") {}
};

class WrongTermCount : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class DuplicateExponent : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class DimensionMismatch : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class IndexOutOfRange : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class UnsupportedDimension : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class BadResolution : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// Two independent computations of the same quantity disagreed. This is
/// a bug in the software, never a property of the input. Exit code 1.
class ConsistencyFailure : public Error {
public:
    using Error::Error;
};

/// The cellular negation map sent a kept cell outside the complex.
class SymmetryViolation : public ConsistencyFailure {
public:
    using ConsistencyFailure::ConsistencyFailure;
};

} // namespace coamoeba
