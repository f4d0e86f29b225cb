#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "xpq/repanalysis.hpp"

using namespace xpq;

namespace {

OperatorSetX matrix_units_2x2_with_trivial_action() {
    // pi = identity representation of M_2, U = I: the noncommutative case
    OperatorSetX ops;
    ops.dim = 2;
    for (long i = 0; i < 2; ++i)
        for (long j = 0; j < 2; ++j) {
            Mat<Cyclo> e(2, 2);
            e(i, j) = Cyclo(1);
            ops.gens.push_back(e);
        }
    ops.gens.push_back(Mat<Cyclo>::identity(2)); // U(1,0)
    ops.gens.push_back(Mat<Cyclo>::identity(2)); // U(0,1)
    return ops;
}

// exact orthogonal matrix from 3-4-5 Givens rotations
Mat<Cyclo> rational_orthogonal(long d, std::mt19937_64& rng) {
    Mat<Cyclo> q = Mat<Cyclo>::identity(d);
    if (d == 1) return q; // the only rational orthogonal scalars are +-1
    const Cyclo c(make_rational(3, 5)), s(make_rational(4, 5));
    for (int rot = 0; rot < 2 * d; ++rot) {
        const long i = static_cast<long>(rng() % d);
        long j = static_cast<long>(rng() % d);
        if (i == j) j = (j + 1) % d;
        Mat<Cyclo> g = Mat<Cyclo>::identity(d);
        g(i, i) = c;
        g(j, j) = c;
        g(i, j) = s;
        g(j, i) = Cyclo(0) - s;
        q = q * g;
    }
    return q;
}

Eigen::MatrixXcd haar_unitary(long d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd z(d, d);
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) z(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (long j = 0; j < d; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
    return q;
}

Mat<std::complex<double>> from_eigen(const Eigen::MatrixXcd& m) {
    Mat<std::complex<double>> out(m.rows(), m.cols());
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

} // namespace

TEST_CASE("commutant dimensions") {
    // identity generator: everything commutes
    OperatorSetX triv;
    triv.dim = 3;
    triv.gens.push_back(Mat<Cyclo>::identity(3));
    CHECK(commutant_dim(triv) == 9);

    // full matrix algebra: scalars only
    CHECK(commutant_dim(matrix_units_2x2_with_trivial_action()) == 1);

    // representation of the orbit measure mod 5
    const FiniteSystem sys = make_system(2, 3, 5);
    const auto rep = covariant_rep_exact(sys, ergodic_measures(sys)[1]);
    const auto ops = rep_operator_set(rep);
    CHECK(commutant_dim(ops) == 1);
    // cross-check the structured path against the dense nullspace
    CHECK(intertwiner_dim(ops, ops) == 1);

    OperatorSetX empty;
    empty.dim = 2;
    CHECK_THROWS_AS(commutant_dim(empty), DomainError);
}

TEST_CASE("structured and dense commutants agree on non-ergodic reps") {
    const FiniteSystem sys = make_system(2, 3, 5);
    const auto ms = ergodic_measures(sys);
    const auto mix =
        InvariantMeasure::convex({{ms[0], make_rational(1, 2)}, {ms[1], make_rational(1, 2)}});
    const auto rep = covariant_rep_exact(sys, mix);
    const auto ops = rep_operator_set(rep);
    CHECK(commutant_dim(ops) == 2);
    CHECK(intertwiner_dim(ops, ops) == 2);
    CHECK_FALSE(is_irreducible(rep));
    // basis consists of the block projections
    const auto basis = commutant_basis(ops);
    REQUIRE(basis.size() == 2);
    for (const auto& t : basis)
        for (long i = 0; i < 5; ++i)
            for (long j = 0; j < 5; ++j)
                if (i != j) CHECK(t(i, j).is_zero());
}

TEST_CASE("irreducibility of ergodic representations") {
    for (long M : {1L, 5L, 7L, 11L}) {
        const FiniteSystem sys = make_system(2, 3, M);
        for (const auto& mu : ergodic_measures(sys))
            CHECK(is_irreducible(covariant_rep_exact(sys, mu)));
    }
}

TEST_CASE("fixed spaces") {
    const FiniteSystem sys = make_system(2, 3, 5);
    const auto ms = ergodic_measures(sys);

    const auto rep = covariant_rep_exact(sys, ms[1]);
    const auto fix = fixed_space(rep);
    REQUIRE(fix.size() == 1);
    // spanned by 1^: all coordinates equal and nonzero
    for (long i = 1; i < 4; ++i) CHECK((fix[0][i] - fix[0][0]).is_zero());
    CHECK_FALSE(fix[0][0].is_zero());

    const auto mix =
        InvariantMeasure::convex({{ms[0], make_rational(1, 3)}, {ms[1], make_rational(2, 3)}});
    const auto rep2 = covariant_rep_exact(sys, mix);
    const auto fix2 = fixed_space(rep2);
    REQUIRE(fix2.size() == 2);
    // basis is orthogonal in the weighted inner product
    CHECK(gns_inner(rep2.space, fix2[0], fix2[1]).is_zero());

    // trivial action on dimension n: the whole space is fixed
    const auto eye = Mat<Cyclo>::identity(3);
    CHECK(fixed_space_of({eye, eye}, {}).size() == 3);

    // fixed dimension equals the number of charged orbits
    const FiniteSystem sys35 = make_system(2, 3, 35);
    const auto ms35 = ergodic_measures(sys35);
    const auto mix35 = InvariantMeasure::convex({{ms35[0], make_rational(1, 4)},
                                                 {ms35[2], make_rational(1, 4)},
                                                 {ms35[3], make_rational(1, 2)}});
    CHECK(fixed_space(covariant_rep_exact(sys35, mix35)).size() == 3);
}

TEST_CASE("unique fixed vector up to phase for irreducible reps") {
    const FiniteSystem sys = make_system(2, 3, 7);
    const auto rep = covariant_rep_exact(sys, ergodic_measures(sys)[1]);
    REQUIRE(is_irreducible(rep));
    const auto fix = fixed_space(rep);
    REQUIRE(fix.size() == 1);
    // any fixed vector is a multiple of the basis vector
    const auto one = rep.unit_vector();
    const auto ratio = fix[0][0];
    for (long i = 0; i < rep.dim(); ++i) CHECK((fix[0][i] - ratio * one[i]).is_zero());
}

TEST_CASE("intertwiner dimensions between representations") {
    const FiniteSystem sys = make_system(2, 3, 5);
    const auto ms = ergodic_measures(sys);
    const auto rep0 = covariant_rep_exact(sys, ms[0]);
    const auto rep1 = covariant_rep_exact(sys, ms[1]);

    CHECK(intertwiner_dim(rep1, rep1) == 1);
    CHECK(intertwiner_dim(rep0, rep0) == 1);
    CHECK(intertwiner_dim(rep0, rep1) == 0);
    CHECK(intertwiner_dim(rep1, rep0) == 0);

    // different systems are rejected
    const FiniteSystem sys7 = make_system(2, 3, 7);
    const auto rep7 = covariant_rep_exact(sys7, ergodic_measures(sys7)[1]);
    CHECK_THROWS_AS(intertwiner_dim(rep1, rep7), IndexMismatch);

    // structured path agrees with the dense nullspace on mixed cases
    const auto mix =
        InvariantMeasure::convex({{ms[0], make_rational(1, 2)}, {ms[1], make_rational(1, 2)}});
    const auto repm = covariant_rep_exact(sys, mix);
    CHECK(intertwiner_dim(repm, repm) == 2);
    CHECK(intertwiner_dim(repm, rep1) == 1);
    CHECK(intertwiner_dim(matched_generator_set(repm), matched_generator_set(rep1)) == 1);
    CHECK(intertwiner_dim(matched_generator_set(repm), matched_generator_set(repm)) == 2);
}

TEST_CASE("conjugation by an exact orthogonal matrix preserves the class") {
    std::mt19937_64 rng(43);
    for (long M : {5L, 7L}) {
        const FiniteSystem sys = make_system(2, 3, M);
        const auto rep = covariant_rep_exact(sys, ergodic_measures(sys)[1]);
        const auto a = matched_generator_set(rep);
        const Mat<Cyclo> q = rational_orthogonal(rep.dim(), rng);
        const Mat<Cyclo> qt = q.transpose(); // inverse, since q is orthogonal
        OperatorSetX b;
        b.dim = rep.dim();
        for (const auto& g : a.gens) b.gens.push_back(q * g * qt);
        CHECK(intertwiner_dim(a, b) == 1);
    }
}

TEST_CASE("equivalence decisions") {
    const FiniteSystem sys = make_system(2, 3, 5);
    const auto ms = ergodic_measures(sys);
    const auto rep0 = covariant_rep_exact(sys, ms[0]);
    const auto rep1 = covariant_rep_exact(sys, ms[1]);

    const auto self = equivalent(rep1, rep1);
    CHECK(self.equivalent);
    CHECK_FALSE(self.heuristic);
    CHECK(self.intertwiner_dimension == 1);

    const auto cross = equivalent(rep0, rep1);
    CHECK_FALSE(cross.equivalent);
    CHECK(cross.intertwiner_dimension == 0);

    // reducible case: the heuristic path flags itself
    const auto mix =
        InvariantMeasure::convex({{ms[0], make_rational(1, 2)}, {ms[1], make_rational(1, 2)}});
    const auto repm = covariant_rep_exact(sys, mix);
    const auto red = equivalent(repm, repm);
    CHECK(red.equivalent);
    CHECK(red.heuristic);

    // same orbits, different masses: same matrices, still equivalent as reps
    const auto mix2 =
        InvariantMeasure::convex({{ms[0], make_rational(1, 3)}, {ms[1], make_rational(2, 3)}});
    const auto repm2 = covariant_rep_exact(sys, mix2);
    const auto red2 = equivalent(repm, repm2);
    CHECK(red2.equivalent);
    CHECK(red2.heuristic);
}

TEST_CASE("ergodicity criterion") {
    const FiniteSystem sys = make_system(2, 3, 5);
    const auto ms = ergodic_measures(sys);
    for (const auto& mu : ms) CHECK(ergodicity_criterion(sys, mu).pass);
    CHECK(ergodicity_criterion(make_system(2, 3, 1), ergodic_measures(make_system(2, 3, 1))[0]).pass);

    const auto mix =
        InvariantMeasure::convex({{ms[0], make_rational(1, 2)}, {ms[1], make_rational(1, 2)}});
    const auto res = ergodicity_criterion(sys, mix);
    CHECK_FALSE(res.pass);
    REQUIRE(res.witness.has_value());
    // the block projection violates: phi(T*T) = 1/2 but |phi(T)|^2 = 1/4
    CHECK(res.lhs.rational_value() == make_rational(1, 2));
    CHECK(res.rhs.rational_value() == make_rational(1, 4));
}

TEST_CASE("noncommutative counterexample keeps its two-dimensional fixed space") {
    const auto ops = matrix_units_2x2_with_trivial_action();
    CHECK(is_irreducible(ops));
    const auto eye = Mat<Cyclo>::identity(2);
    CHECK(fixed_space_of({eye, eye}, {}).size() == 2);
}

TEST_CASE("float rank decisions match exact mode") {
    for (long M : {5L, 7L, 11L, 25L, 35L, 49L}) {
        const FiniteSystem sys = make_system(2, 3, M);
        const auto ms = ergodic_measures(sys);
        for (const auto& mu : ms) {
            const auto repx = covariant_rep_exact(sys, mu);
            const auto repf = covariant_rep_float(sys, mu);
            const auto cd = commutant_dim_f(rep_operator_set(repf));
            CHECK(cd.dim == commutant_dim(rep_operator_set(repx)));
            CHECK(cd.gap > 1e-6);
            const auto fd = fixed_space_dim_f(repf);
            CHECK(fd.dim == static_cast<long>(fixed_space(repx).size()));
            CHECK(fd.gap > 1e-6);
        }
        if (ms.size() >= 2) {
            const auto mix = InvariantMeasure::convex(
                {{ms[0], make_rational(1, 2)}, {ms[1], make_rational(1, 2)}});
            const auto repx = covariant_rep_exact(sys, mix);
            const auto repf = covariant_rep_float(sys, mix);
            CHECK(commutant_dim_f(rep_operator_set(repf)).dim ==
                  commutant_dim(rep_operator_set(repx)));
            CHECK(fixed_space_dim_f(repf).dim == static_cast<long>(fixed_space(repx).size()));
        }
    }
}

TEST_CASE("float intertwiners detect unitary conjugation") {
    std::mt19937_64 rng(47);
    for (long M : {5L, 7L, 13L}) {
        const FiniteSystem sys = make_system(2, 3, M);
        const auto mu = ergodic_measures(sys)[1];
        const auto rep = covariant_rep_float(sys, mu);
        const auto a = matched_generator_set(rep);
        const Eigen::MatrixXcd q = haar_unitary(rep.dim(), rng);
        OperatorSetF b;
        b.dim = rep.dim();
        for (const auto& g : a.gens) b.gens.push_back(from_eigen(q * to_eigen(g) * q.adjoint()));
        const auto res = intertwiner_dim_f(a, b);
        CHECK(res.dim == 1);
        CHECK(res.gap > 1e-6);

        // distinct measures: no intertwiners
        const auto rep0 = covariant_rep_float(sys, ergodic_measures(sys)[0]);
        const auto res0 = intertwiner_dim_f(matched_generator_set(rep0), a);
        CHECK(res0.dim == 0);
    }
}
