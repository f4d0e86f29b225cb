#pragma once

#include <vector>

#include "xpq/algebra.hpp"
#include "xpq/matrix.hpp"
#include "xpq/states.hpp"

namespace xpq {

// Concrete GNS space of a state on C(X): functions restricted to the support
// with inner product <u, v> = sum_j w_j u_j conj(v_j), so <a^, b^> = phi(b*a).
// The null ideal I_phi is exactly the functions vanishing on the support, so
// restriction realizes the quotient A / I_phi.
struct GnsSpace {
    FiniteSystem sys;
    std::vector<long> basis;          // support residues, ascending
    std::vector<Rational> ip_weights; // state weight at each basis residue
    std::vector<long> index;          // residue -> basis position, -1 outside

    long dim() const { return static_cast<long>(basis.size()); }
};

// GNS for an arbitrary state (invariance not required).
GnsSpace gns(const FiniteSystem& sys, const std::vector<Rational>& state_weights);
inline GnsSpace gns(const FiniteSystem& sys, const InvariantMeasure& mu) {
    return gns(sys, mu.weights);
}

// quotient map a -> a^ (restriction to the support)
template <class S>
std::vector<S> gns_vector(const GnsSpace& space, const FunctionElement<S>& a) {
    check_same_system(space.sys, a.sys);
    std::vector<S> v(space.dim());
    for (long i = 0; i < space.dim(); ++i) v[i] = a.values[space.basis[i]];
    return v;
}

template <class S>
S gns_inner(const GnsSpace& space, const std::vector<S>& x, const std::vector<S>& y) {
    S acc(0);
    for (long i = 0; i < space.dim(); ++i) {
        if (structurally_zero(x[i]) || structurally_zero(y[i])) continue;
        acc += scalar_from_rational<S>(space.ip_weights[i]) * x[i] * conj_value(y[i]);
    }
    return acc;
}

// Koopman + multiplication representation of the crossed product induced by
// an invariant state: pi acts by pointwise multiplication on the support,
// U(s) permutes the support basis by s.
template <class S>
struct CovariantRep {
    FiniteSystem sys;
    GnsSpace space;
    Mat<S> mz;     // multiplication by the coordinate function
    Mat<S> u_p;    // U(1,0)
    Mat<S> u_q;    // U(0,1)

    long dim() const { return space.dim(); }

    Mat<S> u_of(GroupElement g) const {
        Mat<S> m(dim(), dim());
        for (long c = 0; c < dim(); ++c) m(space.index[act(sys, g, space.basis[c])], c) = S(1);
        return m;
    }

    // Koopman operators of the maps *p, *q themselves: V f = f(p.), the
    // composition operator. These satisfy V_p M_z = M_z^p V_p exactly.
    Mat<S> v_p() const { return u_of(-kGenP); }
    Mat<S> v_q() const { return u_of(-kGenQ); }

    Mat<S> pi_indicator(long x) const {
        Mat<S> m(dim(), dim());
        if (x < 0 || x >= sys.M) throw DomainError("indicator residue out of range");
        const long i = space.index[x];
        if (i >= 0) m(i, i) = S(1);
        return m;
    }

    Mat<S> pi(const FunctionElement<S>& a) const {
        check_same_system(sys, a.sys);
        Mat<S> m(dim(), dim());
        for (long i = 0; i < dim(); ++i) m(i, i) = a.values[space.basis[i]];
        return m;
    }

    std::vector<S> unit_vector() const { return std::vector<S>(dim(), S(1)); }

    // adjoint with respect to the weighted inner product: W^{-1} A^* W
    Mat<S> weighted_adjoint(const Mat<S>& a) const {
        Mat<S> out = a.conj_transpose();
        for (long i = 0; i < dim(); ++i)
            for (long j = 0; j < dim(); ++j) {
                if (structurally_zero(out(i, j))) continue;
                const Rational f = space.ip_weights[j] / space.ip_weights[i];
                out(i, j) = out(i, j) * scalar_from_rational<S>(f);
            }
        return out;
    }
};

// Koopman generators for an invariant state. The InvariantMeasure type is
// invariant by construction; the support is then closed under both maps,
// which is what makes the permutations well defined.
template <class S>
CovariantRep<S> covariant_rep(const FiniteSystem& sys, const InvariantMeasure& mu) {
    check_same_system(sys, mu.sys);
    CovariantRep<S> rep;
    rep.sys = sys;
    rep.space = gns(sys, mu);
    const long d = rep.space.dim();
    rep.mz = Mat<S>(d, d);
    for (long i = 0; i < d; ++i) rep.mz(i, i) = scalar_root_of_unity<S>(sys.M, rep.space.basis[i]);
    rep.u_p = rep.u_of(kGenP);
    rep.u_q = rep.u_of(kGenQ);
    return rep;
}

using CovariantRepX = CovariantRep<Cyclo>;
using CovariantRepF = CovariantRep<std::complex<double>>;

inline CovariantRepX covariant_rep_exact(const FiniteSystem& sys, const InvariantMeasure& mu) {
    return covariant_rep<Cyclo>(sys, mu);
}
inline CovariantRepF covariant_rep_float(const FiniteSystem& sys, const InvariantMeasure& mu) {
    return covariant_rep<std::complex<double>>(sys, mu);
}

// rho(sum a_s u_s) = sum pi(a_s) U(s)
template <class S>
Mat<S> evaluate(const CovariantRep<S>& rep, const CrossedElement<S>& f) {
    check_same_system(rep.sys, f.sys);
    const long d = rep.dim();
    Mat<S> out(d, d);
    for (const auto& [g, a] : f.terms) {
        // pi(a) U(g) has single nonzero column entries: (r, c) with
        // r = index(g.basis[c]), value a(basis[r]).
        for (long c = 0; c < d; ++c) {
            const long r = rep.space.index[act(rep.sys, g, rep.space.basis[c])];
            const S& v = a.values[rep.space.basis[r]];
            if (!structurally_zero(v)) out(r, c) += v;
        }
    }
    return out;
}

// State b -> <rho(b) x, x> for a unit vector x; with x = 1^ this is the lift
// whose restriction to C(X) is the state itself and which sends every u_s
// to 1.
template <class S>
struct VectorState {
    const CovariantRep<S>* rep;
    std::vector<S> x;

    S operator()(const CrossedElement<S>& f) const {
        const Mat<S> m = evaluate(*rep, f);
        return gns_inner(rep->space, m.apply(x), x);
    }
};

bool unit_vector_check(const GnsSpace& space, const std::vector<Cyclo>& x);
bool unit_vector_check_f(const GnsSpace& space, const std::vector<std::complex<double>>& x,
                         double tol);

template <class S>
VectorState<S> vector_state(const CovariantRep<S>& rep, std::vector<S> x);

} // namespace xpq
