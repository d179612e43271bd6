#pragma once

#include <stdexcept>
#include <string>

namespace mfs {

// Base class for everything the engine can throw.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operands live over base algebras of different dimension.
struct ContextMismatch : Error {
    using Error::Error;
};

// Operands are truncated at different orders.
struct OrderMismatch : Error {
    using Error::Error;
};

// A base-algebra element required to be invertible is numerically singular.
struct NotInvertible : Error {
    using Error::Error;
};

// The inner series of a composition (or the input of left_strip) has a
// constant term above the zero-detection tolerance.
struct NonzeroConstantTerm : Error {
    using Error::Error;
};

// The linear component of a series, viewed as a map on the base algebra,
// is numerically singular; compositional inversion is impossible.
struct LinearTermSingular : Error {
    using Error::Error;
};

// left_strip reconstruction check failed: the input does not factor as
// identity-series times anything.
struct NotLeftMultipleOfIdentity : Error {
    using Error::Error;
};

struct DegreeOutOfRange : Error {
    using Error::Error;
};

// Combinatorial oracle asked for a ground set above its hard limit.
struct SizeLimitExceeded : Error {
    using Error::Error;
};

// An internal redundancy check failed; indicates an engine bug, not bad input.
struct ConsistencyFailure : Error {
    using Error::Error;
};

// Malformed series file.
struct ParseError : Error {
    using Error::Error;
};

} // namespace mfs
