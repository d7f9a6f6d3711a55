#pragma once

#include <stdexcept>
#include <string>

namespace tropbscs {

/// Base of every exception thrown by the core. The C API maps each subclass
/// onto a distinct status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not conform (add/mul/solve, block layouts).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Argument outside the algebraic domain (negative power of zero, conjugate of 𝟘).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A documented precondition such as Tr(A) <= 0 does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Malformed configuration or interchange text.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Allocation instance cannot be satisfied (M < N) or is too large to search.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

class TooLargeError : public Error {
public:
    using Error::Error;
};

}  // namespace tropbscs
