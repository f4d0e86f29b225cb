#include "xpq/furstenberg.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace xpq {

CoprimeReduction coprime_reduction(long p, long q, long N) {
    if (N < 1) throw DomainError("coprime_reduction needs N >= 1");
    CoprimeReduction r;
    r.M = N;
    while (r.M % p == 0) {
        r.M /= p;
        ++r.i;
    }
    while (r.M % q == 0) {
        r.M /= q;
        ++r.j;
    }
    r.unique = gcd_long(p, q) == 1;
    return r;
}

CovariantRepX build_rep(const CatalogEntry& entry) {
    return covariant_rep_exact(entry.measure.sys, entry.measure);
}

CovariantRepF build_rep_float(const CatalogEntry& entry) {
    return covariant_rep_float(entry.measure.sys, entry.measure);
}

int resolve_thread_count(int threads) {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("XPQ_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<CatalogEntry> catalog(long p, long q, long max_modulus, int threads) {
    if (p < 2 || q < 2) throw DomainError("p and q must be >= 2");
    if (max_modulus < 1) throw DomainError("max_modulus must be >= 1");
    std::vector<long> moduli;
    for (long m = 1; m <= max_modulus; ++m)
        if (gcd_long(m, p * q) == 1) moduli.push_back(m);

    std::vector<std::vector<CatalogEntry>> slots(moduli.size());
    const int nthreads = std::min<int>(resolve_thread_count(threads),
                                       static_cast<int>(moduli.size()));
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t idx = next.fetch_add(1);
            if (idx >= moduli.size()) return;
            const long m = moduli[idx];
            const FiniteSystem sys = make_system(p, q, m);
            for (const auto& orb : orbits(sys)) {
                const bool zero_orbit = orb.members.size() == 1 && orb.members[0] == 0;
                if (m == 1) {
                    // the fixed point at z = 1
                } else if (zero_orbit || gcd_long(orb.representative, m) != 1) {
                    continue; // duplicate of an orbit mod a proper divisor
                }
                CatalogEntry e;
                e.p = p;
                e.q = q;
                e.M = m;
                e.orbit = orb;
                e.measure = InvariantMeasure::uniform_on(sys, orb);
                slots[idx].push_back(std::move(e));
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<CatalogEntry> out; // deterministic: ascending modulus, then representative
    for (auto& s : slots)
        for (auto& e : s) out.push_back(std::move(e));
    return out;
}

CharacterizationReport verify_characterization(const CovariantRepX& rep, long M) {
    CharacterizationReport report;
    report.irreducible = is_irreducible(rep);
    const auto fix = fixed_space(rep);
    report.fixed_dim = static_cast<long>(fix.size());
    if (fix.empty()) return report;
    for (long n : divisors_sorted(M)) {
        const Mat<Cyclo> zn = rep.mz.pow(n);
        bool fixes_all = true;
        for (const auto& v : fix) {
            const auto w = zn.apply(v);
            for (long i = 0; i < rep.dim() && fixes_all; ++i)
                if (!(w[i] - v[i]).is_zero()) fixes_all = false;
            if (!fixes_all) break;
        }
        if (fixes_all) {
            report.zn_fixed = true;
            report.n_found = n;
            break;
        }
    }
    return report;
}

bool dimension_bound_check(const CovariantRepX& rep, long n_found) {
    return rep.dim() <= n_found;
}

} // namespace xpq
