#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "xpq/gns.hpp"
#include "xpq/linalg.hpp"

namespace xpq {

// A finite generating set of operators on a common space, together with the
// inner-product weights of the ambient GNS space when one exists.
template <class S>
struct OperatorSet {
    long dim = 0;
    std::vector<Mat<S>> gens;
    std::vector<Rational> ip_weights; // empty means the standard inner product
};

using OperatorSetX = OperatorSet<Cyclo>;
using OperatorSetF = OperatorSet<std::complex<double>>;

// Generators whose commutant equals the commutant of the represented crossed
// product: all indicator multiplications plus the Koopman unitaries and their
// inverses (the set is then closed under adjoints).
template <class S>
OperatorSet<S> rep_operator_set(const CovariantRep<S>& rep) {
    OperatorSet<S> ops;
    ops.dim = rep.dim();
    ops.ip_weights = rep.space.ip_weights;
    for (long i = 0; i < rep.dim(); ++i) ops.gens.push_back(rep.pi_indicator(rep.space.basis[i]));
    ops.gens.push_back(rep.u_p);
    ops.gens.push_back(rep.u_q);
    ops.gens.push_back(rep.u_of(-kGenP));
    ops.gens.push_back(rep.u_of(-kGenQ));
    return ops;
}

// Dimension of {T : T A = A T for every generator A}, the nullspace of the
// stacked Sylvester system. Generators that are diagonal in the standard
// basis let the system be solved structurally: if their joint values separate
// the basis indices, T must itself be diagonal and the remaining equations
// A_ij (t_i - t_j) = 0 are a union-find over the nonzero pattern. Dense
// elimination covers the general (small) case.
long commutant_dim(const OperatorSetX& ops);

// Basis of the commutant (same algorithm, vectors materialized as matrices).
std::vector<Mat<Cyclo>> commutant_basis(const OperatorSetX& ops);

bool is_irreducible(const OperatorSetX& ops);
bool is_irreducible(const CovariantRepX& rep);

// Orthogonal basis (weighted inner product) of the joint fixed space of the
// Koopman unitaries, computed as the exact nullspace of the stacked U - I.
// An empty weight vector means the standard inner product.
std::vector<std::vector<Cyclo>> fixed_space_of(const std::vector<Mat<Cyclo>>& unitaries,
                                               const std::vector<Rational>& weights);
std::vector<std::vector<Cyclo>> fixed_space(const CovariantRepX& rep);

// dim {X : X rho_A(g) = rho_B(g) X for the matched generator lists}.
long intertwiner_dim(const OperatorSetX& a, const OperatorSetX& b);
long intertwiner_dim(const CovariantRepX& a, const CovariantRepX& b);

struct EquivalenceResult {
    bool equivalent = false;
    bool heuristic = false; // reducible inputs: trace comparison + invertibility search
    long intertwiner_dimension = 0;
};

EquivalenceResult equivalent(const CovariantRepX& a, const CovariantRepX& b);

// Ergodicity test of an invariant state: the state is ergodic iff every
// Gamma-invariant T in the commutant of pi satisfies phi(T*T) = |phi(T)|^2,
// which holds iff that commutant is trivial. On failure a violating T is
// returned together with both sides of the identity.
struct ErgodicityResult {
    bool pass = false;
    std::optional<Mat<Cyclo>> witness;
    Cyclo lhs; // phi(T*T)
    Cyclo rhs; // |phi(T)|^2
};

ErgodicityResult ergodicity_criterion(const FiniteSystem& sys, const InvariantMeasure& mu);

// ---- float mode ----------------------------------------------------------
// Rank decisions treat singular values below 1e-10 * sigma_max * dim as zero.
// Each decision carries the margin that supports it: the smallest quantity
// that had to be distinguished from zero (kept singular value, eigenvalue
// separation, or matrix entry used as an edge).

struct RankDecision {
    long dim = 0;
    double gap = 0.0;
};

Eigen::MatrixXcd to_eigen(const Mat<std::complex<double>>& m);

RankDecision commutant_dim_f(const OperatorSetF& ops);
RankDecision fixed_space_dim_f(const CovariantRepF& rep);

// Float intertwiner dimension; a.gens[0] must be diagonal, b.gens[0] normal.
// Columns of an intertwiner are eigenvectors of b.gens[0], which reduces the
// problem to one unknown per matched eigenvalue.
RankDecision intertwiner_dim_f(const OperatorSetF& a, const OperatorSetF& b);

template <class S>
OperatorSet<S> matched_generator_set(const CovariantRep<S>& rep) {
    OperatorSet<S> ops;
    ops.dim = rep.dim();
    ops.ip_weights = rep.space.ip_weights;
    ops.gens = {rep.mz, rep.u_p, rep.u_q};
    return ops;
}

} // namespace xpq
