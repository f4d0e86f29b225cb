#include "xpq/dynsys.hpp"

#include <algorithm>
#include <string>

namespace xpq {

FiniteSystem make_system(long p, long q, long M) {
    if (p < 2 || q < 2) throw DomainError("p and q must be >= 2");
    if (M < 1) throw DomainError("modulus must be >= 1");
    if (gcd_long(M, p * q) != 1)
        throw CoprimalityError("gcd(M, p*q) = " + std::to_string(gcd_long(M, p * q)) +
                               " != 1 for M = " + std::to_string(M));
    FiniteSystem sys;
    sys.p = p;
    sys.q = q;
    sys.M = M;
    sys.dependent_pq = multiplicatively_dependent(p, q);
    return sys;
}

long act(const FiniteSystem& sys, GroupElement g, long k) {
    if (k < 0 || k >= sys.M) throw DomainError("residue out of range");
    const long f = mul_mod(pow_mod(sys.p, g.m, sys.M), pow_mod(sys.q, g.n, sys.M), sys.M);
    return mul_mod(f, k, sys.M);
}

std::vector<Orbit> orbits(const FiniteSystem& sys) {
    std::vector<bool> seen(sys.M, false);
    std::vector<Orbit> out;
    for (long k = 0; k < sys.M; ++k) {
        if (seen[k]) continue;
        Orbit orb;
        std::vector<long> stack{k};
        seen[k] = true;
        while (!stack.empty()) {
            const long x = stack.back();
            stack.pop_back();
            orb.members.push_back(x);
            for (long y : {mul_mod(sys.p, x, sys.M), mul_mod(sys.q, x, sys.M)}) {
                if (!seen[y]) {
                    seen[y] = true;
                    stack.push_back(y);
                }
            }
        }
        std::sort(orb.members.begin(), orb.members.end());
        orb.representative = orb.members.front();
        out.push_back(std::move(orb));
    }
    // scan order already yields ascending representatives; keep the contract explicit
    std::sort(out.begin(), out.end(),
              [](const Orbit& a, const Orbit& b) { return a.representative < b.representative; });
    return out;
}

} // namespace xpq
