#pragma once

#include "xpq/repanalysis.hpp"

namespace xpq {

// N = M * p^i * q^j with gcd(M, pq) = 1. Unique when gcd(p, q) = 1;
// otherwise the greedy strip-p-then-q extraction is returned and flagged.
struct CoprimeReduction {
    long M = 1;
    long i = 0;
    long j = 0;
    bool unique = true;
};

CoprimeReduction coprime_reduction(long p, long q, long N);

// One finitely supported ergodic measure together with its induced matrix
// representation: M_z the diagonal of M-th roots of unity over the orbit,
// V_p and V_q the Koopman permutations with V_p M_z = M_z^p V_p.
struct CatalogEntry {
    long p = 2, q = 3, M = 1;
    Orbit orbit;
    InvariantMeasure measure;
};

CovariantRepX build_rep(const CatalogEntry& entry);
CovariantRepF build_rep_float(const CatalogEntry& entry);

// Effective worker count: explicit argument, else XPQ_THREADS, else the
// hardware concurrency.
int resolve_thread_count(int threads);

// All primitive-orbit entries with modulus <= max_modulus. An orbit of
// residues sharing a factor d with M describes the same circle measure as an
// orbit mod M/d, so only orbits of residues coprime to M are kept (plus the
// fixed point at M = 1). Generation parallelizes over moduli; `threads` <= 0
// reads XPQ_THREADS, defaulting to the hardware count.
std::vector<CatalogEntry> catalog(long p, long q, long max_modulus, int threads = 0);

// The three conditions characterizing reps induced by finitely supported
// ergodic measures: irreducibility, a nonzero joint fixed space, and a power
// z^N acting trivially on it. N_found is the least such N among the divisors
// of M (z^M always works since M_z^M = I).
struct CharacterizationReport {
    bool irreducible = false;
    long fixed_dim = 0;
    bool zn_fixed = false;
    long n_found = 0;
};

CharacterizationReport verify_characterization(const CovariantRepX& rep, long M);

// dim H <= N_found, the span bound of the characterization.
bool dimension_bound_check(const CovariantRepX& rep, long n_found);

} // namespace xpq
