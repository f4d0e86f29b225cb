#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "xpq/errors.hpp"

namespace xpq {

inline long gcd_long(long a, long b) { return std::gcd(a, b); }
inline long lcm_long(long a, long b) { return std::lcm(a, b); }

// Euclidean remainder in [0, m).
inline long mod_floor(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

inline long mul_mod(long a, long b, long m) {
    return static_cast<long>((static_cast<__int128>(a) * b) % m);
}

// a^(-1) mod m; requires gcd(a, m) = 1.
inline long inv_mod(long a, long m) {
    a = mod_floor(a, m);
    long t = 0, new_t = 1, r = m, new_r = a;
    while (new_r != 0) {
        const long q = r / new_r;
        long tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw DomainError("inv_mod: argument not invertible");
    return mod_floor(t, m);
}

// a^e mod m for an arbitrary (possibly negative) integer exponent.
inline long pow_mod(long a, long e, long m) {
    if (m == 1) return 0;
    if (e < 0) return pow_mod(inv_mod(a, m), -e, m);
    long base = mod_floor(a, m), acc = 1;
    while (e > 0) {
        if (e & 1) acc = mul_mod(acc, base, m);
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    return acc;
}

inline std::vector<long> divisors_sorted(long n) {
    std::vector<long> small, large;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
    return small;
}

inline std::map<long, long> factorize(long n) {
    std::map<long, long> f;
    for (long d = 2; d * d <= n; ++d) {
        while (n % d == 0) {
            ++f[d];
            n /= d;
        }
    }
    if (n > 1) ++f[n];
    return f;
}

// True iff p^a = q^b for some positive integers a, b, i.e. log p / log q is
// rational. Decided exactly from the prime factorizations.
inline bool multiplicatively_dependent(long p, long q) {
    const auto fp = factorize(p), fq = factorize(q);
    if (fp.size() != fq.size()) return false;
    long num = -1, den = -1; // common exponent ratio fp/fq
    auto itp = fp.begin();
    auto itq = fq.begin();
    for (; itp != fp.end(); ++itp, ++itq) {
        if (itp->first != itq->first) return false;
        long a = itp->second, b = itq->second;
        const long g = std::gcd(a, b);
        a /= g;
        b /= g;
        if (num == -1) {
            num = a;
            den = b;
        } else if (a != num || b != den) {
            return false;
        }
    }
    return true;
}

} // namespace xpq
