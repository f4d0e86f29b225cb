#pragma once

#include <vector>

#include "xpq/errors.hpp"
#include "xpq/scalar.hpp"

namespace xpq {

// Dense row-major matrix over an exact or float scalar. Entries in this
// project are mostly zero (diagonals, permutations, short sums of monomial
// matrices), so products skip structural zeros.
template <class S>
class Mat {
  public:
    Mat() = default;
    Mat(long rows, long cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Mat identity(long n) {
        Mat m(n, n);
        for (long i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    S& operator()(long i, long j) { return a_[i * cols_ + j]; }
    const S& operator()(long i, long j) const { return a_[i * cols_ + j]; }

    Mat operator+(const Mat& o) const {
        check_same_shape(o);
        Mat out(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) out.a_[k] = a_[k] + o.a_[k];
        return out;
    }

    Mat operator-(const Mat& o) const {
        check_same_shape(o);
        Mat out(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) out.a_[k] = a_[k] - o.a_[k];
        return out;
    }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw IndexMismatch("matrix product shape mismatch");
        Mat out(rows_, o.cols_);
        for (long i = 0; i < rows_; ++i)
            for (long k = 0; k < cols_; ++k) {
                const S& aik = (*this)(i, k);
                if (structurally_zero(aik)) continue;
                for (long j = 0; j < o.cols_; ++j) {
                    const S& bkj = o(k, j);
                    if (structurally_zero(bkj)) continue;
                    out(i, j) += aik * bkj;
                }
            }
        return out;
    }

    Mat operator*(const S& s) const {
        Mat out(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k)
            if (!structurally_zero(a_[k])) out.a_[k] = a_[k] * s;
        return out;
    }

    std::vector<S> apply(const std::vector<S>& v) const {
        if (static_cast<long>(v.size()) != cols_) throw IndexMismatch("matrix-vector shape mismatch");
        std::vector<S> out(rows_, S(0));
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j) {
                const S& aij = (*this)(i, j);
                if (!structurally_zero(aij) && !structurally_zero(v[j])) out[i] += aij * v[j];
            }
        return out;
    }

    Mat conj_transpose() const {
        Mat out(cols_, rows_);
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j) out(j, i) = conj_value((*this)(i, j));
        return out;
    }

    Mat transpose() const {
        Mat out(cols_, rows_);
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    Mat pow(long e) const {
        if (rows_ != cols_) throw IndexMismatch("pow of non-square matrix");
        Mat acc = identity(rows_), base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

  private:
    long rows_ = 0, cols_ = 0;
    std::vector<S> a_;

    void check_same_shape(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw IndexMismatch("matrix shape mismatch");
    }
};

// exact entrywise equality (Cyclo)
inline bool mat_equal(const Mat<Cyclo>& a, const Mat<Cyclo>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            if (!(a(i, j) - b(i, j)).is_zero()) return false;
    return true;
}

inline double max_abs_diff(const Mat<std::complex<double>>& a, const Mat<std::complex<double>>& b) {
    double m = 0.0;
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

template <class S>
Mat<std::complex<double>> to_complex_matrix(const Mat<S>& a) {
    Mat<std::complex<double>> out(a.rows(), a.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) out(i, j) = to_complex(a(i, j));
    return out;
}

} // namespace xpq
