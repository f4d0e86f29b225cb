#include "xpq/states.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace xpq {

namespace {

void check_probability(const std::vector<Rational>& w) {
    Rational total(0);
    for (const auto& x : w) {
        if (x < 0) throw NotAProbability("negative weight");
        total += x;
    }
    if (total != 1) throw NotAProbability("total mass " + rational_to_string(total) + " != 1");
}

long checked_scale(long k, long base, long e) {
    __int128 v = k;
    for (long t = 0; t < e; ++t) {
        v *= base;
        if (v > static_cast<__int128>(1) << 62 || v < -(static_cast<__int128>(1) << 62))
            throw DomainError("exponent scaling overflows");
    }
    return static_cast<long>(v);
}

} // namespace

bool is_invariant(const FiniteSystem& sys, const std::vector<Rational>& weights) {
    if (static_cast<long>(weights.size()) != sys.M) throw IndexMismatch("weight vector size != M");
    check_probability(weights);
    for (long k = 0; k < sys.M; ++k) {
        if (weights[act(sys, kGenP, k)] != weights[k]) return false;
        if (weights[act(sys, kGenQ, k)] != weights[k]) return false;
    }
    return true;
}

bool is_invariant_f(const FiniteSystem& sys, const std::vector<double>& weights, double tol) {
    if (static_cast<long>(weights.size()) != sys.M) throw IndexMismatch("weight vector size != M");
    double total = 0.0;
    for (double x : weights) {
        if (x < -tol) throw NotAProbability("negative weight");
        total += x;
    }
    if (std::fabs(total - 1.0) > tol) throw NotAProbability("total mass != 1");
    for (long k = 0; k < sys.M; ++k) {
        if (std::fabs(weights[act(sys, kGenP, k)] - weights[k]) > tol) return false;
        if (std::fabs(weights[act(sys, kGenQ, k)] - weights[k]) > tol) return false;
    }
    return true;
}

InvariantMeasure InvariantMeasure::make(const FiniteSystem& sys, std::vector<Rational> weights) {
    if (!is_invariant(sys, weights)) throw NotInvariant("weights not fixed by *p, *q pushforwards");
    InvariantMeasure mu;
    mu.sys = sys;
    mu.weights = std::move(weights);
    for (long x = 0; x < sys.M; ++x)
        if (mu.weights[x] > 0) mu.support.push_back(x);
    for (const auto& orb : orbits(sys)) {
        Rational mass(0);
        for (long x : orb.members) mass += mu.weights[x];
        if (mass > 0) mu.orbit_mass.emplace_back(orb, mass);
    }
    return mu;
}

InvariantMeasure InvariantMeasure::point_mass(const FiniteSystem& sys, long x) {
    std::vector<Rational> w(sys.M, Rational(0));
    w.at(x) = 1;
    return make(sys, std::move(w)); // invariant only when x is a fixed point
}

InvariantMeasure InvariantMeasure::uniform_on(const FiniteSystem& sys, const Orbit& orb) {
    std::vector<Rational> w(sys.M, Rational(0));
    const Rational share = make_rational(1, static_cast<long>(orb.members.size()));
    for (long x : orb.members) w[x] = share;
    return make(sys, std::move(w));
}

InvariantMeasure InvariantMeasure::convex(
    const std::vector<std::pair<InvariantMeasure, Rational>>& mix) {
    if (mix.empty()) throw DomainError("empty convex combination");
    const FiniteSystem sys = mix.front().first.sys;
    std::vector<Rational> w(sys.M, Rational(0));
    Rational total(0);
    for (const auto& [mu, c] : mix) {
        check_same_system(sys, mu.sys);
        if (c < 0) throw NotAProbability("negative mixing coefficient");
        total += c;
        for (long x = 0; x < sys.M; ++x) w[x] += c * mu.weights[x];
    }
    if (total != 1) throw NotAProbability("mixing coefficients do not sum to 1");
    return make(sys, std::move(w));
}

bool InvariantMeasure::is_ergodic() const {
    if (orbit_mass.size() != 1) return false;
    const auto& [orb, mass] = orbit_mass.front();
    const Rational share = make_rational(1, static_cast<long>(orb.members.size()));
    for (long x : orb.members)
        if (weights[x] != share) return false;
    return true;
}

std::vector<InvariantMeasure> ergodic_measures(const FiniteSystem& sys) {
    std::vector<InvariantMeasure> out;
    for (const auto& orb : orbits(sys)) out.push_back(InvariantMeasure::uniform_on(sys, orb));
    return out;
}

Cyclo moment(const InvariantMeasure& mu, long k) {
    Cyclo acc;
    for (long j : mu.support)
        acc += Cyclo(mu.weights[j]) * Cyclo::root_of_unity(mu.sys.M, mod_floor(k * j, mu.sys.M));
    return acc;
}

std::complex<double> moment_f(const InvariantMeasure& mu, long k) {
    std::complex<double> acc(0.0, 0.0);
    for (long j : mu.support) {
        const double theta = 2.0 * M_PI * static_cast<double>(mod_floor(k * j, mu.sys.M)) /
                             static_cast<double>(mu.sys.M);
        acc += mu.weights[j].get_d() * std::complex<double>(std::cos(theta), std::sin(theta));
    }
    return acc;
}

ExponentTriple normalize_exponent(long p, long q, ExponentTriple t) {
    if (t.k == 0) return {0, 0, 0};
    // fold nonnegative powers into k
    if (t.i > 0) {
        t.k = checked_scale(t.k, p, t.i);
        t.i = 0;
    }
    if (t.j > 0) {
        t.k = checked_scale(t.k, q, t.j);
        t.j = 0;
    }
    // cancel negative powers against factors of k (p first, then q)
    while (t.i < 0 && t.k % p == 0) {
        t.k /= p;
        ++t.i;
    }
    while (t.j < 0 && t.k % q == 0) {
        t.k /= q;
        ++t.j;
    }
    return t;
}

Cyclo solenoid_extend(const InvariantMeasure& mu, long k, long i, long j) {
    const long M = mu.sys.M;
    const long f = mul_mod(pow_mod(mu.sys.p, i, M), pow_mod(mu.sys.q, j, M), M);
    return moment(mu, mul_mod(f, mod_floor(k, M), M));
}

PsdCertificate toeplitz_psd(const std::vector<Cyclo>& row0, bool exact) {
    const long n = static_cast<long>(row0.size());
    std::vector<std::vector<Cyclo>> s(n, std::vector<Cyclo>(n));
    for (long r = 0; r < n; ++r)
        for (long c = 0; c < n; ++c) s[r][c] = r >= c ? row0[r - c] : row0[c - r].conj();

    PsdCertificate cert;
    cert.order = n;
    if (exact) {
        cert.exact_mode = true;
        // Fraction-free Hermitian LDL* sweep (Bareiss scaling): entries stay
        // scaled minors of the input, so rational coefficients do not blow
        // up. The k-th scaled pivot is the leading principal minor of the
        // active submatrix; PSD iff no pivot is negative and zero pivots
        // only occur with a vanishing column.
        Cyclo prev(1);
        for (long j = 0; j < n; ++j) {
            const Cyclo piv = s[j][j];
            if (!piv.is_real()) throw DomainError("toeplitz_psd: non-real pivot");
            const int sg = piv.sign_real();
            if (sg < 0) {
                cert.psd = false;
                cert.bad_pivot = j;
                return cert;
            }
            if (sg == 0) {
                // PSD forces the whole pivot column of the Schur complement to vanish
                for (long i = j + 1; i < n; ++i) {
                    if (!s[i][j].is_zero()) {
                        cert.psd = false;
                        cert.bad_pivot = j;
                        return cert;
                    }
                }
                continue; // drop the index; the scaling telescopes past it
            }
            const Cyclo inv_prev = prev.inverse();
            for (long i = j + 1; i < n; ++i)
                for (long c = j + 1; c < n; ++c)
                    s[i][c] = (piv * s[i][c] - s[i][j] * s[j][c]) * inv_prev;
            prev = piv;
        }
        cert.psd = true;
        return cert;
    }
    cert.exact_mode = false;
    Eigen::MatrixXcd t(n, n);
    for (long r = 0; r < n; ++r)
        for (long c = 0; c < n; ++c) t(r, c) = s[r][c].to_complex();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(t);
    cert.min_eigenvalue = es.eigenvalues().minCoeff();
    cert.psd = cert.min_eigenvalue >= -1e-10 * static_cast<double>(n);
    return cert;
}

PsdCertificate psd_certificate(const InvariantMeasure& mu, long n) {
    if (n < 1) throw DomainError("psd order must be >= 1");
    std::vector<Cyclo> row0(n);
    for (long k = 0; k < n; ++k) row0[k] = moment(mu, k);
    return toeplitz_psd(row0, /*exact=*/true);
}

PsdCertificate psd_certificate_f(const InvariantMeasure& mu, long n) {
    if (n < 1) throw DomainError("psd order must be >= 1");
    std::vector<Cyclo> row0(n);
    for (long k = 0; k < n; ++k) row0[k] = moment(mu, k);
    return toeplitz_psd(row0, /*exact=*/false);
}

Cyclo positive_combination_check(const InvariantMeasure& mu,
                                 const std::map<ExponentTriple, Cyclo>& coeffs) {
    const long p = mu.sys.p, q = mu.sys.q;
    std::vector<std::pair<ExponentTriple, Cyclo>> family;
    long min_i = 0, min_j = 0;
    for (const auto& [t, lam] : coeffs) {
        const ExponentTriple n = normalize_exponent(p, q, t);
        min_i = std::min(min_i, n.i);
        min_j = std::min(min_j, n.j);
        family.emplace_back(n, lam);
    }
    // clear denominators: multiply every exponent by p^a q^b
    const long a = -min_i, b = -min_j;
    std::vector<long> ints;
    ints.reserve(family.size());
    for (const auto& [t, lam] : family)
        ints.push_back(checked_scale(checked_scale(t.k, p, t.i + a), q, t.j + b));
    Cyclo acc;
    for (size_t s = 0; s < family.size(); ++s)
        for (size_t t = 0; t < family.size(); ++t) {
            const Cyclo lam = family[s].second.conj() * family[t].second;
            if (lam.structurally_zero()) continue;
            acc += lam * moment(mu, ints[t] - ints[s]);
        }
    return acc;
}

MomentSequence MomentSequence::of(const InvariantMeasure& mu) {
    MomentSequence seq;
    seq.p_ = mu.sys.p;
    seq.q_ = mu.sys.q;
    seq.base_ = mu;
    return seq;
}

MomentSequence MomentSequence::lebesgue_reference(long p, long q) {
    MomentSequence seq;
    seq.p_ = p;
    seq.q_ = q;
    return seq;
}

Cyclo MomentSequence::entry(ExponentTriple t) const {
    const ExponentTriple n = normalize_exponent(p_, q_, t);
    if (base_) return solenoid_extend(*base_, n.k, n.i, n.j);
    return n.k == 0 ? Cyclo(1) : Cyclo(0);
}

} // namespace xpq
