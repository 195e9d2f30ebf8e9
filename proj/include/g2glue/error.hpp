#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace g2glue {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed descriptors, elements or CLI arguments.  CLI exit code 2.
struct ParseError : Error {
    using Error::Error;
};

// Caller violated a documented precondition.  CLI exit code 3.
struct PreconditionError : Error {
    using Error::Error;
};

// An identity that is a theorem failed to hold.  CLI exit code 4.
// Seeing one of these means a bug, not bad input.
struct InternalError : Error {
    using Error::Error;
};

struct NotThetaSmooth : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct SquareRootExtractionFailed : InternalError {
    using InternalError::InternalError;
};

// Interpolation input where two of the three points collide (over a ring:
// collide modulo some prime divisor of the modulus).
struct TripleNotDistinct : PreconditionError {
    TripleNotDistinct(const std::string& side, int i, int j, std::int64_t prime)
        : PreconditionError(side + " points " + std::to_string(i + 1) + " and " +
                            std::to_string(j + 1) + " collide" +
                            (prime > 0 ? " modulo " + std::to_string(prime) : "")),
          index_a(i), index_b(j), prime(prime) {}
    int index_a;
    int index_b;
    std::int64_t prime;  // 0 over a field
};

// moebius_from_cubics: the interpolated map does not descend to the base
// field, i.e. the supplied root matching is not Galois-equivariant.
struct DescentError : PreconditionError {
    using PreconditionError::PreconditionError;
};

}  // namespace g2glue
