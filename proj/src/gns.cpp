#include "xpq/gns.hpp"

namespace xpq {

GnsSpace gns(const FiniteSystem& sys, const std::vector<Rational>& state_weights) {
    if (static_cast<long>(state_weights.size()) != sys.M)
        throw IndexMismatch("state weight vector size != M");
    Rational total(0);
    for (const auto& w : state_weights) {
        if (w < 0) throw NotAProbability("negative weight");
        total += w;
    }
    if (total != 1) throw NotAProbability("state weights do not sum to 1");
    GnsSpace space;
    space.sys = sys;
    space.index.assign(sys.M, -1);
    for (long x = 0; x < sys.M; ++x) {
        if (state_weights[x] > 0) {
            space.index[x] = static_cast<long>(space.basis.size());
            space.basis.push_back(x);
            space.ip_weights.push_back(state_weights[x]);
        }
    }
    return space;
}

bool unit_vector_check(const GnsSpace& space, const std::vector<Cyclo>& x) {
    return (gns_inner(space, x, x) - Cyclo(1)).is_zero();
}

bool unit_vector_check_f(const GnsSpace& space, const std::vector<std::complex<double>>& x,
                         double tol) {
    return std::abs(gns_inner(space, x, x) - std::complex<double>(1.0, 0.0)) <= tol;
}

template <>
VectorState<Cyclo> vector_state(const CovariantRep<Cyclo>& rep, std::vector<Cyclo> x) {
    if (static_cast<long>(x.size()) != rep.dim()) throw IndexMismatch("vector size != dim");
    if (!unit_vector_check(rep.space, x)) throw DomainError("vector_state: not a unit vector");
    return {&rep, std::move(x)};
}

template <>
VectorState<std::complex<double>> vector_state(const CovariantRep<std::complex<double>>& rep,
                                               std::vector<std::complex<double>> x) {
    if (static_cast<long>(x.size()) != rep.dim()) throw IndexMismatch("vector size != dim");
    if (!unit_vector_check_f(rep.space, x, 1e-9)) throw DomainError("vector_state: not a unit vector");
    return {&rep, std::move(x)};
}

} // namespace xpq
