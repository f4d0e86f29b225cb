#pragma once

#include <stdexcept>
#include <string>

namespace xpq {

// Base class for all xpq errors so callers can catch the whole family.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Modulus shares a factor with p*q, so multiplication by p or q is not a
// bijection on residues.
struct CoprimalityError : Error {
    using Error::Error;
};

// Parameter outside its admissible range (p < 2, q < 2, M < 1, ...).
struct DomainError : Error {
    using Error::Error;
};

// Weight vector is not a probability distribution.
struct NotAProbability : Error {
    using Error::Error;
};

// Operation requires an invariant state and the given one is not.
struct NotInvariant : Error {
    using Error::Error;
};

// Two objects indexed by different finite systems were combined.
struct IndexMismatch : Error {
    using Error::Error;
};

} // namespace xpq
