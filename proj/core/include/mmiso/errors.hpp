#pragma once

#include <stdexcept>
#include <string>

namespace mmiso {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

class FieldMismatchError : public Error {
public:
    using Error::Error;
};

/// A square matrix (or linear map) expected to be invertible is singular,
/// or a zero scalar was inverted.
class NotInvertibleError : public Error {
public:
    using Error::Error;
};

/// The requested factor permutation violates the shape constraints
/// ((23) needs m=n, (12) needs m=p, (13) needs n=p, 3-cycles need m=n=p).
class InadmissiblePermutationError : public Error {
public:
    using Error::Error;
};

/// A probed map sent some rank-one matrix to a matrix of rank != 1, or the
/// assembled sandwich form failed its final basis verification.
class NotRankOnePreservingError : public Error {
public:
    using Error::Error;
};

/// The multiplicativity hypothesis B(y)A(x) = C(yx) fails on some basis pair.
class NotMultiplicativeError : public Error {
public:
    using Error::Error;
};

/// A map that must be a plain sandwich x -> axb turned out to be of
/// transpose type; for multiplicative triples this marks malformed input.
class NotSandwichFormError : public Error {
public:
    using Error::Error;
};

/// An operator on the tensor space is not a Kronecker product of factor maps.
class NotDecomposableError : public Error {
public:
    using Error::Error;
};

/// The rank-one terms do not sum to the expected tensor.
class NotADecompositionError : public Error {
public:
    using Error::Error;
};

/// An exhaustive search would exceed the configured raw-triple budget.
class BudgetExceededError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace mmiso
