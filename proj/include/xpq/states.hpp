#pragma once

#include <map>
#include <optional>
#include <vector>

#include "xpq/cyclo.hpp"
#include "xpq/dynsys.hpp"

namespace xpq {

// Invariant probability measure on the residues of a finite system, i.e. a
// Z^2-invariant state on C(X). Weights are exact rationals; invariance is
// checked at construction so the type upholds its own contract.
struct InvariantMeasure {
    FiniteSystem sys;
    std::vector<Rational> weights;
    std::vector<long> support;                          // residues with positive weight, ascending
    std::vector<std::pair<Orbit, Rational>> orbit_mass; // orbits carrying positive mass

    static InvariantMeasure make(const FiniteSystem& sys, std::vector<Rational> weights);
    static InvariantMeasure point_mass(const FiniteSystem& sys, long x);
    static InvariantMeasure uniform_on(const FiniteSystem& sys, const Orbit& orb);
    static InvariantMeasure convex(const std::vector<std::pair<InvariantMeasure, Rational>>& mix);

    bool is_ergodic() const; // exactly one charged orbit, uniform on it
};

// True iff weights is a probability vector fixed by both pushforwards.
// Throws NotAProbability on negative weights or total mass != 1.
bool is_invariant(const FiniteSystem& sys, const std::vector<Rational>& weights);

// Float-mode variant: residual of the pushforward equations against tol.
bool is_invariant_f(const FiniteSystem& sys, const std::vector<double>& weights, double tol);

// One uniform measure per orbit, sorted by orbit representative. These are
// exactly the extreme points of the invariance polytope.
std::vector<InvariantMeasure> ergodic_measures(const FiniteSystem& sys);

// k-th Fourier moment sum_j w_j * omega^(k*j), omega = exp(2*pi*i/M).
Cyclo moment(const InvariantMeasure& mu, long k);
std::complex<double> moment_f(const InvariantMeasure& mu, long k);

// Exponent k * p^i * q^j of a character of the pq-solenoid, i, j in Z.
struct ExponentTriple {
    long k = 0;
    long i = 0;
    long j = 0;
    auto operator<=>(const ExponentTriple&) const = default;
};

// Canonical rewriting: positive powers folded into k, negative powers
// cancelled against factors of k, so that p | k implies i = 0 and q | k
// implies j = 0 (zero maps to (0,0,0)). Greedy p-then-q extraction; for
// non-coprime p, q the greedy form is still deterministic.
ExponentTriple normalize_exponent(long p, long q, ExponentTriple t);

// Moment of the extended measure on the solenoid at exponent k*p^i*q^j.
// Equal triples of Z[1/pq] give equal values; invariance makes the extension
// well defined.
Cyclo solenoid_extend(const InvariantMeasure& mu, long k, long i, long j);

// Result of a positive-semidefiniteness certificate for the order-n moment
// Toeplitz matrix. Exact mode pivots come from a Hermitian LDL* sweep with
// sign decisions on the real embedding; float mode reports a minimum
// eigenvalue.
struct PsdCertificate {
    bool exact_mode = true;
    bool psd = false;
    long order = 0;
    // exact mode: index of first negative pivot, -1 if none
    long bad_pivot = -1;
    // float mode: minimum eigenvalue of the Hermitian Toeplitz matrix
    double min_eigenvalue = 0.0;
};

PsdCertificate psd_certificate(const InvariantMeasure& mu, long n);
PsdCertificate psd_certificate_f(const InvariantMeasure& mu, long n);

// Same certificates for an arbitrary Hermitian Toeplitz matrix given by its
// symbol sequence s(k), k in Z, with s(-k) = conj(s(k)) enforced by use.
PsdCertificate toeplitz_psd(const std::vector<Cyclo>& row0, bool exact);

// Quadratic form sum_{s,t} conj(l_s) l_t nu(z^(e_t - e_s)) over a finite
// coefficient family on Z[1/pq] exponents, evaluated by clearing denominators
// with a p^a q^b scaling so only integer moments are touched. The value is
// exactly real; callers assert nonnegativity via Cyclo::sign_real.
Cyclo positive_combination_check(const InvariantMeasure& mu,
                                 const std::map<ExponentTriple, Cyclo>& coeffs);

// Fourier data of a measure on the solenoid, indexed by exponent triples.
// Either backed by a finite invariant measure or the hard-coded reference
// data of the Haar (Lebesgue) measure, which has no finite weight vector.
class MomentSequence {
  public:
    static MomentSequence of(const InvariantMeasure& mu);
    static MomentSequence lebesgue_reference(long p, long q);

    Cyclo entry(ExponentTriple t) const;
    bool is_reference() const { return !base_.has_value(); }
    const InvariantMeasure& base() const { return base_.value(); }

  private:
    MomentSequence() = default;
    long p_ = 2, q_ = 3;
    std::optional<InvariantMeasure> base_;
};

} // namespace xpq
