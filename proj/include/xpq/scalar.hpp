#pragma once

#include <complex>

#include "xpq/cyclo.hpp"
#include "xpq/rational.hpp"

namespace xpq {

// Small overload set so the algebra and representation templates work over
// the exact scalar (Cyclo) and the float scalar (std::complex<double>).

inline Cyclo conj_value(const Cyclo& c) { return c.conj(); }
inline std::complex<double> conj_value(const std::complex<double>& z) { return std::conj(z); }

// Structural zero test, used to skip work in sparse loops. For floats this is
// an exact-0 test on purpose: tolerances belong to comparisons, not algebra.
inline bool structurally_zero(const Cyclo& c) { return c.structurally_zero(); }
inline bool structurally_zero(const std::complex<double>& z) { return z == 0.0; }

template <class S> S scalar_from_rational(const Rational& r);
template <> inline Cyclo scalar_from_rational<Cyclo>(const Rational& r) { return Cyclo(r); }
template <> inline std::complex<double> scalar_from_rational<std::complex<double>>(const Rational& r) {
    return {r.get_d(), 0.0};
}

template <class S> S scalar_root_of_unity(long order, long expo);
template <> inline Cyclo scalar_root_of_unity<Cyclo>(long order, long expo) {
    return Cyclo::root_of_unity(order, expo);
}
template <> inline std::complex<double> scalar_root_of_unity<std::complex<double>>(long order, long expo) {
    const double theta = 2.0 * M_PI * static_cast<double>(expo) / static_cast<double>(order);
    return {std::cos(theta), std::sin(theta)};
}

inline std::complex<double> to_complex(const Cyclo& c) { return c.to_complex(); }
inline std::complex<double> to_complex(const std::complex<double>& z) { return z; }

} // namespace xpq
