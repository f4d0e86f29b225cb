#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "xpq/rational.hpp"

namespace xpq {

// Exact element of the cyclotomic field Q(zeta_L): a finite rational
// combination of roots of unity, stored sparsely as exponent -> coefficient
// with exponents taken mod the root order L. Arithmetic stays in this group
// algebra form (cheap for the monomial-heavy values that dominate here);
// equality and zero tests reduce modulo the L-th cyclotomic polynomial, which
// is the kernel of evaluation at exp(2*pi*i/L).
//
// Values of different orders combine by lifting to the lcm, and orders are
// shrunk back whenever all exponents share a factor with L, so moments over
// Z/M stay in Q(zeta_M) even after passing through Gaussian-rational data.
class Cyclo {
  public:
    Cyclo() = default;
    Cyclo(long n) : Cyclo(Rational(n)) {}
    explicit Cyclo(const Rational& r);

    // zeta_order^expo
    static Cyclo root_of_unity(long order, long expo);
    // re + im * i  (i realized as a 4th root of unity)
    static Cyclo gaussian(const Rational& re, const Rational& im);
    static Cyclo i();

    long order() const { return order_; }
    const std::map<long, Rational>& terms() const { return terms_; }
    bool structurally_zero() const { return terms_.empty(); }

    Cyclo operator+(const Cyclo& o) const;
    Cyclo operator-(const Cyclo& o) const;
    Cyclo operator*(const Cyclo& o) const;
    Cyclo operator-() const;
    Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
    Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

    Cyclo conj() const;
    Cyclo inverse() const; // field inverse; throws DomainError on zero

    bool is_zero() const;
    bool operator==(const Cyclo& o) const { return (*this - o).is_zero(); }
    bool operator!=(const Cyclo& o) const { return !(*this == o); }

    bool is_real() const { return (*this - conj()).is_zero(); }
    bool is_rational() const;
    Rational rational_value() const; // requires is_rational()

    // Sign of a real value: exact zero test first, then certified evaluation
    // at increasing MPFR precision until the error bound separates from 0.
    int sign_real() const;

    // Coefficients of the canonical representative in the power basis
    // 1, zeta, ..., zeta^(phi(L)-1) of Q(zeta_L).
    std::vector<Rational> canonical() const;

    std::complex<double> to_complex() const;
    std::string to_string() const;

    // Cyclotomic polynomial Phi_n as dense rational coefficients (low first).
    static const std::vector<Rational>& cyclotomic_poly(long n);

  private:
    long order_ = 1;
    std::map<long, Rational> terms_;

    void insert_term(long expo, const Rational& coeff);
    void shrink_order();
    Cyclo lifted_to(long new_order) const;
};

inline Cyclo operator*(const Rational& r, const Cyclo& c) { return Cyclo(r) * c; }

} // namespace xpq
