#pragma once

#include <gmpxx.h>

#include <string>

#include "xpq/errors.hpp"

namespace xpq {

// Exact rational scalar. GMP keeps values canonical (reduced, positive
// denominator) through arithmetic; direct num/den construction must be
// canonicalized, which make_rational takes care of.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Serialized form is always "num/den" with positive denominator.
inline std::string rational_to_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational rational_from_string(const std::string& s) {
    const auto slash = s.find('/');
    Rational r;
    if (slash == std::string::npos) {
        r = Rational(s);
    } else {
        r = Rational(s.substr(0, slash) + "/" + s.substr(slash + 1));
    }
    r.canonicalize();
    return r;
}

inline int sign(const Rational& r) { return sgn(r); }

} // namespace xpq
