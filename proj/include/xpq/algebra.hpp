#pragma once

#include <map>
#include <vector>

#include "xpq/dynsys.hpp"
#include "xpq/scalar.hpp"

namespace xpq {

// Element of the function algebra C(X) on a finite system: one value per
// residue. S is Cyclo (exact mode) or std::complex<double> (float mode).
template <class S>
struct FunctionElement {
    FiniteSystem sys;
    std::vector<S> values;

    FunctionElement() = default;
    explicit FunctionElement(const FiniteSystem& s) : sys(s), values(s.M, S(0)) {}

    static FunctionElement one(const FiniteSystem& s) {
        FunctionElement f(s);
        for (auto& v : f.values) v = S(1);
        return f;
    }

    static FunctionElement indicator(const FiniteSystem& s, long x) {
        FunctionElement f(s);
        f.values.at(x) = S(1);
        return f;
    }

    // coordinate function x -> exp(2*pi*i*x/M)
    static FunctionElement coordinate(const FiniteSystem& s) {
        FunctionElement f(s);
        for (long x = 0; x < s.M; ++x) f.values[x] = scalar_root_of_unity<S>(s.M, x);
        return f;
    }

    bool is_structurally_zero() const {
        for (const auto& v : values)
            if (!structurally_zero(v)) return false;
        return true;
    }

    FunctionElement operator+(const FunctionElement& o) const {
        check_same_system(sys, o.sys);
        FunctionElement out(sys);
        for (long x = 0; x < sys.M; ++x) out.values[x] = values[x] + o.values[x];
        return out;
    }

    FunctionElement operator-(const FunctionElement& o) const {
        check_same_system(sys, o.sys);
        FunctionElement out(sys);
        for (long x = 0; x < sys.M; ++x) out.values[x] = values[x] - o.values[x];
        return out;
    }

    // pointwise product
    FunctionElement operator*(const FunctionElement& o) const {
        check_same_system(sys, o.sys);
        FunctionElement out(sys);
        for (long x = 0; x < sys.M; ++x)
            if (!structurally_zero(values[x]) && !structurally_zero(o.values[x]))
                out.values[x] = values[x] * o.values[x];
        return out;
    }

    FunctionElement scaled(const S& s) const {
        FunctionElement out(sys);
        for (long x = 0; x < sys.M; ++x)
            if (!structurally_zero(values[x])) out.values[x] = values[x] * s;
        return out;
    }

    FunctionElement conj() const {
        FunctionElement out(sys);
        for (long x = 0; x < sys.M; ++x) out.values[x] = conj_value(values[x]);
        return out;
    }
};

// (alpha_g a)(x) = a(g^{-1}.x). A group homomorphism Z^2 -> Aut(C(X)) that
// pushes the indicator of {k} to the indicator of {g.k}.
template <class S>
FunctionElement<S> alpha(const FiniteSystem& sys, GroupElement g, const FunctionElement<S>& a) {
    check_same_system(sys, a.sys);
    FunctionElement<S> out(sys);
    for (long x = 0; x < sys.M; ++x) out.values[x] = a.values[act(sys, -g, x)];
    return out;
}

// Finitely supported map Z^2 -> C(X); the *-algebra of the crossed product
// before completion. Terms with structurally zero coefficient are pruned.
template <class S>
struct CrossedElement {
    FiniteSystem sys;
    std::map<GroupElement, FunctionElement<S>> terms;

    CrossedElement() = default;
    explicit CrossedElement(const FiniteSystem& s) : sys(s) {}

    static CrossedElement unit(const FiniteSystem& s) {
        return monomial(FunctionElement<S>::one(s), GroupElement{0, 0});
    }

    // a * u_g
    static CrossedElement monomial(const FunctionElement<S>& a, GroupElement g) {
        CrossedElement f(a.sys);
        f.add_term(g, a);
        return f;
    }

    void add_term(GroupElement g, const FunctionElement<S>& a) {
        check_same_system(sys, a.sys);
        auto it = terms.find(g);
        if (it == terms.end()) {
            if (!a.is_structurally_zero()) terms.emplace(g, a);
        } else {
            it->second = it->second + a;
            if (it->second.is_structurally_zero()) terms.erase(it);
        }
    }

    CrossedElement operator+(const CrossedElement& o) const {
        check_same_system(sys, o.sys);
        CrossedElement out = *this;
        for (const auto& [g, a] : o.terms) out.add_term(g, a);
        return out;
    }

    CrossedElement operator-(const CrossedElement& o) const {
        check_same_system(sys, o.sys);
        CrossedElement out = *this;
        for (const auto& [g, a] : o.terms) out.add_term(g, a.scaled(S(-1)));
        return out;
    }

    CrossedElement scaled(const S& s) const {
        CrossedElement out(sys);
        for (const auto& [g, a] : terms) out.add_term(g, a.scaled(s));
        return out;
    }
};

// (f*g)(t) = sum_{s1+s2=t} f(s1) * alpha_{s1}(g(s2))
template <class S>
CrossedElement<S> convolve(const FiniteSystem& sys, const CrossedElement<S>& f,
                           const CrossedElement<S>& g) {
    check_same_system(sys, f.sys);
    check_same_system(sys, g.sys);
    CrossedElement<S> out(sys);
    for (const auto& [s1, a] : f.terms)
        for (const auto& [s2, b] : g.terms) out.add_term(s1 + s2, a * alpha(sys, s1, b));
    return out;
}

// f^*(t) = alpha_t(f(-t)^*)
template <class S>
CrossedElement<S> adjoint(const FiniteSystem& sys, const CrossedElement<S>& f) {
    check_same_system(sys, f.sys);
    CrossedElement<S> out(sys);
    for (const auto& [g, a] : f.terms) out.add_term(-g, alpha(sys, -g, a.conj()));
    return out;
}

using FunctionElementX = FunctionElement<Cyclo>;
using FunctionElementF = FunctionElement<std::complex<double>>;
using CrossedElementX = CrossedElement<Cyclo>;
using CrossedElementF = CrossedElement<std::complex<double>>;

// exact equality / float max residual helpers

inline bool function_equal(const FunctionElementX& a, const FunctionElementX& b) {
    if (a.sys != b.sys) return false;
    for (long x = 0; x < a.sys.M; ++x)
        if (!(a.values[x] - b.values[x]).is_zero()) return false;
    return true;
}

inline bool crossed_equal(const CrossedElementX& a, const CrossedElementX& b) {
    const CrossedElementX d = a - b;
    for (const auto& [g, fn] : d.terms)
        for (const auto& v : fn.values)
            if (!v.is_zero()) return false;
    return true;
}

inline double crossed_residual(const CrossedElementF& a, const CrossedElementF& b) {
    const CrossedElementF d = a - b;
    double m = 0.0;
    for (const auto& [g, fn] : d.terms)
        for (const auto& v : fn.values) m = std::max(m, std::abs(v));
    return m;
}

} // namespace xpq
