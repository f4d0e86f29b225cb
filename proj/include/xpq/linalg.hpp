#pragma once

#include <vector>

#include "xpq/matrix.hpp"

namespace xpq {

inline bool field_is_zero(const Cyclo& c) { return c.is_zero(); }
inline bool field_is_zero(const Rational& r) { return r == 0; }
inline Cyclo field_inverse(const Cyclo& c) { return c.inverse(); }
inline Rational field_inverse(const Rational& r) { return Rational(1) / r; }

// cost proxy for pivot selection: fewer stored terms eliminate cheaper
inline size_t field_weight(const Cyclo& c) { return c.terms().size(); }
inline size_t field_weight(const Rational&) { return 1; }

// Reduced row echelon form in place. Returns pivot columns.
template <class F>
std::vector<long> rref(Mat<F>& m) {
    std::vector<long> pivot_cols;
    long r = 0;
    for (long c = 0; c < m.cols() && r < m.rows(); ++c) {
        long best = -1;
        size_t best_w = 0;
        for (long i = r; i < m.rows(); ++i) {
            if (field_is_zero(m(i, c))) continue;
            const size_t w = field_weight(m(i, c));
            if (best < 0 || w < best_w) {
                best = i;
                best_w = w;
            }
        }
        if (best < 0) continue;
        if (best != r)
            for (long j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(best, j));
        const F inv = field_inverse(m(r, c));
        for (long j = c; j < m.cols(); ++j)
            if (!field_is_zero(m(r, j))) m(r, j) = m(r, j) * inv;
        m(r, c) = F(1);
        for (long i = 0; i < m.rows(); ++i) {
            if (i == r || field_is_zero(m(i, c))) continue;
            const F f = m(i, c);
            for (long j = c; j < m.cols(); ++j) {
                if (field_is_zero(m(r, j))) continue;
                m(i, j) = m(i, j) - f * m(r, j);
            }
            m(i, c) = F(0);
        }
        pivot_cols.push_back(c);
        ++r;
    }
    return pivot_cols;
}

template <class F>
long rank_exact(Mat<F> m) {
    return static_cast<long>(rref(m).size());
}

// Basis of the right nullspace {v : m v = 0}.
template <class F>
std::vector<std::vector<F>> nullspace_exact(Mat<F> m) {
    const auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (long c : pivots) is_pivot[c] = true;
    std::vector<std::vector<F>> basis;
    for (long f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<F> v(m.cols(), F(0));
        v[f] = F(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F(0) - m(static_cast<long>(r), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace xpq
