#include "xpq/repanalysis.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace xpq {

namespace {

struct UnionFind {
    std::vector<long> parent;
    explicit UnionFind(long n) : parent(n) { std::iota(parent.begin(), parent.end(), 0L); }
    long find(long x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(long a, long b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[a] = b;
    }
    long components() {
        long c = 0;
        for (long i = 0; i < static_cast<long>(parent.size()); ++i)
            if (find(i) == i) ++c;
        return c;
    }
};

bool is_diagonal(const Mat<Cyclo>& m) {
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j)
            if (i != j && !m(i, j).is_zero()) return false;
    return true;
}

// Refine {0..d-1} by the joint values of the diagonal generators; returns
// true when all classes are singletons (the commutant is then diagonal).
bool diagonal_values_separate(const std::vector<const Mat<Cyclo>*>& diag, long d) {
    std::vector<std::vector<long>> classes{std::vector<long>(d)};
    std::iota(classes[0].begin(), classes[0].end(), 0L);
    for (const auto* g : diag) {
        std::vector<std::vector<long>> next;
        for (auto& cls : classes) {
            if (cls.size() == 1) {
                next.push_back(cls);
                continue;
            }
            std::vector<std::vector<long>> buckets;
            for (long i : cls) {
                bool placed = false;
                for (auto& b : buckets) {
                    if (((*g)(i, i) - (*g)(b.front(), b.front())).is_zero()) {
                        b.push_back(i);
                        placed = true;
                        break;
                    }
                }
                if (!placed) buckets.push_back({i});
            }
            for (auto& b : buckets) next.push_back(std::move(b));
        }
        classes = std::move(next);
    }
    for (const auto& cls : classes)
        if (cls.size() > 1) return false;
    return true;
}

// Component labels of the graph whose edges are the off-diagonal nonzeros of
// the non-diagonal generators. Valid once T is known to be diagonal.
std::vector<long> diagonal_commutant_components(const std::vector<const Mat<Cyclo>*>& rest,
                                                long d) {
    UnionFind uf(d);
    for (const auto* g : rest)
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j)
                if (i != j && !(*g)(i, j).is_zero()) uf.unite(i, j);
    std::vector<long> label(d);
    for (long i = 0; i < d; ++i) label[i] = uf.find(i);
    return label;
}

constexpr long kDenseUnknownLimit = 4096;

// Stacked Sylvester system for {X : X A_i = B_i X}; unknown X is
// dim_b x dim_a, vectorized row-major.
Mat<Cyclo> sylvester_stack(const OperatorSetX& a, const OperatorSetX& b) {
    if (a.gens.size() != b.gens.size()) throw IndexMismatch("generator lists differ in length");
    const long da = a.dim, db = b.dim, n = da * db;
    if (n > kDenseUnknownLimit) throw Error("dense intertwiner system too large");
    const long per = db * da; // equations per generator: one for each (y, c)
    Mat<Cyclo> m(static_cast<long>(a.gens.size()) * per, n);
    for (size_t g = 0; g < a.gens.size(); ++g) {
        const auto& ga = a.gens[g];
        const auto& gb = b.gens[g];
        const long row0 = static_cast<long>(g) * per;
        for (long y = 0; y < db; ++y)
            for (long c = 0; c < da; ++c) {
                const long r = row0 + y * da + c;
                // sum_x X(y,x) ga(x,c) - sum_k gb(y,k) X(k,c) = 0
                for (long x = 0; x < da; ++x)
                    if (!ga(x, c).is_zero()) m(r, y * da + x) += ga(x, c);
                for (long k = 0; k < db; ++k)
                    if (!gb(y, k).is_zero()) m(r, k * da + c) -= gb(y, k);
            }
    }
    return m;
}

std::vector<Mat<Cyclo>> dense_intertwiner_basis(const OperatorSetX& a, const OperatorSetX& b) {
    const auto vecs = nullspace_exact(sylvester_stack(a, b));
    std::vector<Mat<Cyclo>> out;
    for (const auto& v : vecs) {
        Mat<Cyclo> x(b.dim, a.dim);
        for (long y = 0; y < b.dim; ++y)
            for (long c = 0; c < a.dim; ++c) x(y, c) = v[y * a.dim + c];
        out.push_back(std::move(x));
    }
    return out;
}

// permutation of basis positions induced by g
std::vector<long> basis_permutation(const CovariantRepX& rep, GroupElement g) {
    std::vector<long> perm(rep.dim());
    for (long c = 0; c < rep.dim(); ++c)
        perm[c] = rep.space.index[act(rep.sys, g, rep.space.basis[c])];
    return perm;
}

} // namespace

long commutant_dim(const OperatorSetX& ops) {
    return static_cast<long>(commutant_basis(ops).size());
}

std::vector<Mat<Cyclo>> commutant_basis(const OperatorSetX& ops) {
    if (ops.gens.empty()) throw DomainError("commutant of an empty generator list");
    const long d = ops.dim;
    std::vector<const Mat<Cyclo>*> diag, rest;
    for (const auto& g : ops.gens) {
        if (g.rows() != d || g.cols() != d) throw IndexMismatch("generator of wrong size");
        (is_diagonal(g) ? diag : rest).push_back(&g);
    }
    if (!diag.empty() && diagonal_values_separate(diag, d)) {
        const auto label = diagonal_commutant_components(rest, d);
        std::vector<long> roots = label;
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        std::vector<Mat<Cyclo>> basis;
        for (long r : roots) {
            Mat<Cyclo> t(d, d);
            for (long i = 0; i < d; ++i)
                if (label[i] == r) t(i, i) = Cyclo(1);
            basis.push_back(std::move(t));
        }
        return basis;
    }
    return dense_intertwiner_basis(ops, ops);
}

bool is_irreducible(const OperatorSetX& ops) { return commutant_dim(ops) == 1; }

bool is_irreducible(const CovariantRepX& rep) { return is_irreducible(rep_operator_set(rep)); }

std::vector<std::vector<Cyclo>> fixed_space_of(const std::vector<Mat<Cyclo>>& unitaries,
                                               const std::vector<Rational>& weights) {
    if (unitaries.empty()) throw DomainError("fixed space of an empty unitary list");
    const long d = unitaries.front().cols();
    Mat<Cyclo> stack(static_cast<long>(unitaries.size()) * d, d);
    const Mat<Cyclo> eye = Mat<Cyclo>::identity(d);
    for (size_t u = 0; u < unitaries.size(); ++u) {
        const Mat<Cyclo> a = unitaries[u] - eye;
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j) stack(static_cast<long>(u) * d + i, j) = a(i, j);
    }
    auto basis = nullspace_exact(stack);
    auto inner = [&](const std::vector<Cyclo>& x, const std::vector<Cyclo>& y) {
        Cyclo acc;
        for (long k = 0; k < d; ++k) {
            Cyclo t = x[k] * y[k].conj();
            if (!weights.empty()) t = Cyclo(weights[k]) * t;
            acc += t;
        }
        return acc;
    };
    // orthogonalize in the weighted inner product (no normalization, so the
    // arithmetic stays in the field)
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < i; ++j) {
            const Cyclo num = inner(basis[i], basis[j]);
            if (num.is_zero()) continue;
            const Cyclo f = num * inner(basis[j], basis[j]).inverse();
            for (long k = 0; k < d; ++k) basis[i][k] -= f * basis[j][k];
        }
    return basis;
}

std::vector<std::vector<Cyclo>> fixed_space(const CovariantRepX& rep) {
    return fixed_space_of({rep.u_p, rep.u_q}, rep.space.ip_weights);
}

long intertwiner_dim(const OperatorSetX& a, const OperatorSetX& b) {
    return static_cast<long>(dense_intertwiner_basis(a, b).size());
}

long intertwiner_dim(const CovariantRepX& a, const CovariantRepX& b) {
    check_same_system(a.sys, b.sys);
    // Columns of X are M_z-eigenvectors: entry (y, x) can be nonzero only
    // when the supports carry the same residue; the Koopman constraints then
    // identify entries along the joint permutation action.
    const long da = a.dim(), db = b.dim();
    std::vector<std::pair<long, long>> pairs; // (y, x) with equal residues
    std::vector<std::vector<long>> pair_at(db, std::vector<long>(da, -1));
    for (long x = 0; x < da; ++x) {
        const long y = b.space.index[a.space.basis[x]];
        if (y >= 0) {
            pair_at[y][x] = static_cast<long>(pairs.size());
            pairs.emplace_back(y, x);
        }
    }
    if (pairs.empty()) return 0;
    const long zero_node = static_cast<long>(pairs.size());
    UnionFind uf(zero_node + 1);
    for (GroupElement g : {kGenP, kGenQ}) {
        const auto pa_inv = basis_permutation(a, -g);
        const auto pb_inv = basis_permutation(b, -g);
        for (size_t t = 0; t < pairs.size(); ++t) {
            const auto [y, x] = pairs[t];
            const long partner = pair_at[pb_inv[y]][pa_inv[x]];
            if (partner < 0)
                uf.unite(static_cast<long>(t), zero_node);
            else
                uf.unite(static_cast<long>(t), partner);
        }
    }
    const long zr = uf.find(zero_node);
    long dim = 0;
    for (long t = 0; t <= zero_node; ++t)
        if (uf.find(t) == t && t != zr) ++dim;
    return dim;
}

EquivalenceResult equivalent(const CovariantRepX& a, const CovariantRepX& b) {
    EquivalenceResult res;
    res.intertwiner_dimension = intertwiner_dim(a, b);
    if (a.dim() != b.dim()) {
        res.equivalent = false;
        res.heuristic = false;
        return res;
    }
    const bool irr_a = is_irreducible(a), irr_b = is_irreducible(b);
    if (irr_a && irr_b) {
        // Schur: a nonzero intertwiner between irreducibles is invertible
        res.equivalent = res.intertwiner_dimension >= 1;
        res.heuristic = false;
        return res;
    }
    res.heuristic = true;
    // necessary condition: equal traces on a canonical word family
    for (long k = 0; k < a.sys.M; ++k)
        for (long s = 0; s <= 1; ++s)
            for (long t = 0; t <= 1; ++t) {
                Cyclo tra, trb;
                const Mat<Cyclo> wa = a.mz.pow(k) * a.u_p.pow(s) * a.u_q.pow(t);
                const Mat<Cyclo> wb = b.mz.pow(k) * b.u_p.pow(s) * b.u_q.pow(t);
                for (long i = 0; i < a.dim(); ++i) {
                    tra += wa(i, i);
                    trb += wb(i, i);
                }
                if (!(tra - trb).is_zero()) {
                    res.equivalent = false;
                    return res;
                }
            }
    // invertibility search over the intertwiner space
    auto basis = dense_intertwiner_basis(matched_generator_set(a), matched_generator_set(b));
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    for (int attempt = 0; attempt < 8 && !basis.empty(); ++attempt) {
        Mat<Cyclo> x(b.dim(), a.dim());
        for (size_t i = 0; i < basis.size(); ++i) {
            const long c = attempt == 0 ? 1 : static_cast<long>(rng() % 5) + 1;
            x = x + basis[i] * Cyclo(c);
        }
        if (rank_exact(x) == a.dim()) {
            res.equivalent = true;
            return res;
        }
    }
    res.equivalent = false;
    return res;
}

ErgodicityResult ergodicity_criterion(const FiniteSystem& sys, const InvariantMeasure& mu) {
    const auto rep = covariant_rep_exact(sys, mu);
    const auto basis = commutant_basis(rep_operator_set(rep));
    ErgodicityResult res;
    if (basis.size() == 1) {
        res.pass = true;
        return res;
    }
    const auto one = rep.unit_vector();
    for (const auto& t : basis) {
        const auto t_one = t.apply(one);
        const Cyclo lhs = gns_inner(rep.space, t_one, t_one); // phi(T*T)
        const Cyclo val = gns_inner(rep.space, t_one, one);   // phi(T)
        const Cyclo rhs = val * val.conj();
        if (!(lhs - rhs).is_zero()) {
            res.pass = false;
            res.witness = t;
            res.lhs = lhs;
            res.rhs = rhs;
            return res;
        }
    }
    throw Error("nontrivial commutant without a violating basis element");
}

// ---- float mode ----------------------------------------------------------

Eigen::MatrixXcd to_eigen(const Mat<std::complex<double>>& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

namespace {

struct SvdNullity {
    long nullity = 0;
    double gap = 0.0; // smallest singular value treated as nonzero
};

// Rank rule: singular values below 1e-10 * sigma_max * dim count as zero.
// scale_floor guards the all-noise case: systems assembled from norm-one
// operators (unitaries, roots of unity) pass 1.0 so that a matrix that is
// pure roundoff has full nullity instead of spurious rank.
SvdNullity svd_nullity(const Eigen::MatrixXcd& m, double scale_floor = 0.0) {
    SvdNullity out;
    if (m.size() == 0) {
        out.nullity = m.cols();
        out.gap = std::numeric_limits<double>::infinity();
        return out;
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    const double smax = std::max(sv.size() ? sv(0) : 0.0, scale_floor);
    const double tau = 1e-10 * smax * static_cast<double>(m.cols());
    long rank = 0;
    double gap = std::numeric_limits<double>::infinity();
    for (long i = 0; i < sv.size(); ++i) {
        if (sv(i) > tau) {
            ++rank;
            gap = std::min(gap, sv(i));
        }
    }
    out.nullity = m.cols() - rank;
    out.gap = gap;
    return out;
}

bool is_diagonal_f(const Eigen::MatrixXcd& m) {
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j)
            if (i != j && m(i, j) != 0.0) return false;
    return true;
}

} // namespace

RankDecision commutant_dim_f(const OperatorSetF& ops) {
    if (ops.gens.empty()) throw DomainError("commutant of an empty generator list");
    const long d = ops.dim;
    std::vector<Eigen::MatrixXcd> diag, rest;
    for (const auto& g : ops.gens) {
        auto m = to_eigen(g);
        (is_diagonal_f(m) ? diag : rest).push_back(std::move(m));
    }
    constexpr double kSeparationTol = 1e-8;
    constexpr double kEdgeTol = 1e-8;
    bool separated = !diag.empty();
    double gap = std::numeric_limits<double>::infinity();
    if (separated) {
        for (long i = 0; i < d && separated; ++i)
            for (long j = i + 1; j < d && separated; ++j) {
                double best = 0.0;
                for (const auto& g : diag) best = std::max(best, std::abs(g(i, i) - g(j, j)));
                if (best <= kSeparationTol)
                    separated = false;
                else
                    gap = std::min(gap, best);
            }
    }
    if (separated) {
        UnionFind uf(d);
        for (const auto& g : rest)
            for (long i = 0; i < d; ++i)
                for (long j = 0; j < d; ++j)
                    if (i != j && std::abs(g(i, j)) > kEdgeTol) {
                        uf.unite(i, j);
                        gap = std::min(gap, std::abs(g(i, j)));
                    }
        return {uf.components(), gap};
    }
    if (d * d > kDenseUnknownLimit) throw Error("float commutant system too large");
    // dense Sylvester stack, nullity by SVD
    const long n = d * d;
    Eigen::MatrixXcd stack(static_cast<long>(ops.gens.size()) * n, n);
    stack.setZero();
    for (size_t g = 0; g < ops.gens.size(); ++g) {
        const auto m = to_eigen(ops.gens[g]);
        const long row0 = static_cast<long>(g) * n;
        for (long y = 0; y < d; ++y)
            for (long c = 0; c < d; ++c) {
                const long r = row0 + y * d + c;
                for (long x = 0; x < d; ++x) stack(r, y * d + x) += m(x, c);
                for (long k = 0; k < d; ++k) stack(r, k * d + c) -= m(y, k);
            }
    }
    const auto sn = svd_nullity(stack, 1.0);
    return {sn.nullity, sn.gap};
}

RankDecision fixed_space_dim_f(const CovariantRepF& rep) {
    const long d = rep.dim();
    Eigen::MatrixXcd stack(2 * d, d);
    stack.setZero();
    const auto up = to_eigen(rep.u_p), uq = to_eigen(rep.u_q);
    stack.topRows(d) = up - Eigen::MatrixXcd::Identity(d, d);
    stack.bottomRows(d) = uq - Eigen::MatrixXcd::Identity(d, d);
    const auto sn = svd_nullity(stack, 1.0);
    return {sn.nullity, sn.gap};
}

RankDecision intertwiner_dim_f(const OperatorSetF& a, const OperatorSetF& b) {
    if (a.gens.size() != b.gens.size() || a.gens.empty())
        throw IndexMismatch("generator lists differ in length");
    const long da = a.dim, db = b.dim;
    const auto a0 = to_eigen(a.gens[0]);
    if (!is_diagonal_f(a0)) throw DomainError("intertwiner_dim_f: a.gens[0] must be diagonal");
    const auto b0 = to_eigen(b.gens[0]);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(b0);
    if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
    const auto& evs = es.eigenvalues();
    const auto& vecs = es.eigenvectors();

    constexpr double kMatchTol = 1e-6;
    std::vector<long> match(da, -1); // column x -> eigenpair index
    double margin = std::numeric_limits<double>::infinity();
    for (long x = 0; x < da; ++x) {
        long best = -1;
        double best_d = std::numeric_limits<double>::infinity(), second = best_d;
        for (long j = 0; j < evs.size(); ++j) {
            const double dist = std::abs(evs(j) - a0(x, x));
            if (dist < best_d) {
                second = best_d;
                best_d = dist;
                best = j;
            } else {
                second = std::min(second, dist);
            }
        }
        if (best >= 0 && best_d <= kMatchTol) {
            match[x] = best;
            margin = std::min(margin, second); // distance to the next eigenvalue
        } else {
            margin = std::min(margin, best_d); // how clearly x is unmatched
        }
    }
    std::vector<long> var_of(da, -1);
    long nvars = 0;
    for (long x = 0; x < da; ++x)
        if (match[x] >= 0) var_of[x] = nvars++;
    if (nvars == 0) return {0, margin};

    const long ngen = static_cast<long>(a.gens.size()) - 1;
    Eigen::MatrixXcd sys(std::max<long>(1, ngen * da * db), nvars);
    sys.setZero();
    long r0 = 0;
    for (size_t g = 1; g < a.gens.size(); ++g) {
        const auto ga = to_eigen(a.gens[g]);
        const auto gb = to_eigen(b.gens[g]);
        for (long c = 0; c < da; ++c) {
            // sum_x c_x w_{match(x)} ga(x,c) - c_c gb w_{match(c)} = 0
            for (long x = 0; x < da; ++x) {
                if (var_of[x] < 0 || ga(x, c) == 0.0) continue;
                sys.block(r0, var_of[x], db, 1) += ga(x, c) * vecs.col(match[x]);
            }
            if (var_of[c] >= 0) sys.block(r0, var_of[c], db, 1) -= gb * vecs.col(match[c]);
            r0 += db;
        }
    }
    const auto sn = svd_nullity(sys.topRows(std::max<long>(r0, 1)), 1.0);
    return {sn.nullity, std::min(sn.gap, margin)};
}

} // namespace xpq
