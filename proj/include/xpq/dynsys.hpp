#pragma once

#include <compare>
#include <vector>

#include "xpq/errors.hpp"
#include "xpq/numeric.hpp"

namespace xpq {

// Element (m, n) of Z^2, the acting group. (1,0) and (0,1) drive the *p and
// *q maps respectively.
struct GroupElement {
    long m = 0;
    long n = 0;

    GroupElement operator+(GroupElement o) const { return {m + o.m, n + o.n}; }
    GroupElement operator-(GroupElement o) const { return {m - o.m, n - o.n}; }
    GroupElement operator-() const { return {-m, -n}; }
    auto operator<=>(const GroupElement&) const = default;
};

inline constexpr GroupElement kGenP{1, 0};
inline constexpr GroupElement kGenQ{0, 1};

// Residues {0,...,M-1} identified with circle points k/M, acted on by
// multiplication by p and q. gcd(M, pq) = 1 so both maps are bijections.
struct FiniteSystem {
    long p = 2;
    long q = 3;
    long M = 1;
    // p, q multiplicatively dependent (log p / log q rational); recorded for
    // reports, never enforced.
    bool dependent_pq = false;

    bool operator==(const FiniteSystem& o) const { return p == o.p && q == o.q && M == o.M; }
    bool operator!=(const FiniteSystem& o) const { return !(*this == o); }
};

struct Orbit {
    std::vector<long> members; // sorted ascending
    long representative = 0;   // minimum member
};

FiniteSystem make_system(long p, long q, long M);

// (m, n) . k = p^m q^n k mod M, negative exponents via modular inverses.
long act(const FiniteSystem& sys, GroupElement g, long k);

// Partition of {0,...,M-1} into orbits of the group generated by *p and *q,
// sorted by representative.
std::vector<Orbit> orbits(const FiniteSystem& sys);

inline void check_same_system(const FiniteSystem& a, const FiniteSystem& b) {
    if (a != b) throw IndexMismatch("objects indexed by different systems");
}

} // namespace xpq
