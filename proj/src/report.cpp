#include "xpq/report.hpp"

#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <random>
#include <thread>

namespace xpq {

Json rational_json(const Rational& r) { return rational_to_string(r); }

Json cyclo_json(const Cyclo& c) {
    Json j;
    j["order"] = c.order();
    Json coeffs = Json::array();
    for (const auto& x : c.canonical()) coeffs.push_back(rational_to_string(x));
    j["coeffs"] = coeffs;
    return j;
}

Json float_json(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json orbits_json(long p, long q, long modulus) {
    const FiniteSystem sys = make_system(p, q, modulus);
    Json j;
    j["tool_version"] = kToolVersion;
    j["p"] = p;
    j["q"] = q;
    j["modulus"] = modulus;
    j["multiplicatively_dependent"] = sys.dependent_pq;
    Json arr = Json::array();
    for (const auto& orb : orbits(sys)) arr.push_back(orb.members);
    j["orbits"] = arr;
    return j;
}

Json catalog_json(long p, long q, long max_modulus, int threads) {
    Json j;
    j["tool_version"] = kToolVersion;
    j["p"] = p;
    j["q"] = q;
    j["max_modulus"] = max_modulus;
    j["mode"] = "exact";
    j["multiplicatively_dependent"] = multiplicatively_dependent(p, q);
    j["coprime_reduction_unique"] = gcd_long(p, q) == 1;
    Json entries = Json::array();
    for (const auto& e : catalog(p, q, max_modulus, threads)) {
        Json je;
        je["modulus"] = e.M;
        je["representative"] = e.orbit.representative;
        je["members"] = e.orbit.members;
        je["dim"] = static_cast<long>(e.orbit.members.size());
        je["weight_per_point"] =
            rational_json(make_rational(1, static_cast<long>(e.orbit.members.size())));
        je["mz_exponents"] = e.orbit.members;
        entries.push_back(std::move(je));
    }
    j["entries"] = entries;
    return j;
}

Json moments_json(const MomentsOptions& opt) {
    const FiniteSystem sys = make_system(opt.p, opt.q, opt.modulus);
    const auto orbs = orbits(sys);
    const Orbit* chosen = nullptr;
    for (const auto& orb : orbs)
        for (long m : orb.members)
            if (m == opt.orbit_rep) chosen = &orb;
    if (!chosen) throw DomainError("orbit representative out of range");
    const InvariantMeasure mu = InvariantMeasure::uniform_on(sys, *chosen);

    Json j;
    j["tool_version"] = kToolVersion;
    j["p"] = opt.p;
    j["q"] = opt.q;
    j["modulus"] = opt.modulus;
    j["orbit_representative"] = chosen->representative;
    j["mode"] = opt.exact ? "exact" : "float";
    Json entries = Json::array();
    for (long k = 0; k <= opt.range; ++k) {
        Json je;
        je["k"] = k;
        const Cyclo v = moment(mu, k);
        je["value"] = cyclo_json(v);
        const auto z = v.to_complex();
        je["value_re"] = float_json(z.real());
        je["value_im"] = float_json(z.imag());
        entries.push_back(std::move(je));
    }
    j["moments"] = entries;
    if (opt.psd_order > 0) {
        const PsdCertificate cert =
            opt.exact ? psd_certificate(mu, opt.psd_order) : psd_certificate_f(mu, opt.psd_order);
        Json jc;
        jc["order"] = cert.order;
        jc["psd"] = cert.psd;
        if (cert.exact_mode) {
            jc["bad_pivot"] = cert.bad_pivot;
        } else {
            jc["min_eigenvalue"] = float_json(cert.min_eigenvalue);
        }
        j["psd_certificate"] = jc;
    }
    return j;
}

namespace {

Rational random_small_rational(std::mt19937_64& rng) {
    const long num = static_cast<long>(rng() % 7) - 3;
    const long den = static_cast<long>(rng() % 3) + 1;
    return make_rational(num, den);
}

FunctionElementX random_function(const FiniteSystem& sys, std::mt19937_64& rng) {
    FunctionElementX f(sys);
    for (long x = 0; x < sys.M; ++x)
        f.values[x] = Cyclo::gaussian(random_small_rational(rng), random_small_rational(rng));
    return f;
}

CrossedElementX random_crossed(const FiniteSystem& sys, std::mt19937_64& rng, int max_terms) {
    CrossedElementX f(sys);
    const int nterms = 1 + static_cast<int>(rng() % max_terms);
    for (int t = 0; t < nterms; ++t) {
        const GroupElement g{static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 5) - 2};
        f.add_term(g, random_function(sys, rng));
    }
    return f;
}

CrossedElementF crossed_to_float(const CrossedElementX& f) {
    CrossedElementF out(f.sys);
    for (const auto& [g, a] : f.terms) {
        FunctionElementF af(f.sys);
        for (long x = 0; x < f.sys.M; ++x) af.values[x] = a.values[x].to_complex();
        out.add_term(g, af);
    }
    return out;
}

// phi(a) = <pi(a) 1^, 1^>
Cyclo state_value(const InvariantMeasure& mu, const FunctionElementX& a) {
    Cyclo acc;
    for (long x : mu.support) acc += Cyclo(mu.weights[x]) * a.values[x];
    return acc;
}

bool relations_exact(const CovariantRepX& rep) {
    const auto vp = rep.v_p(), vq = rep.v_q();
    if (!mat_equal(vp * vq, vq * vp)) return false;
    if (!mat_equal(vp * rep.mz, rep.mz.pow(rep.sys.p) * vp)) return false;
    if (!mat_equal(vq * rep.mz, rep.mz.pow(rep.sys.q) * vq)) return false;
    return mat_equal(rep.mz.pow(rep.sys.M), Mat<Cyclo>::identity(rep.dim()));
}

double relations_residual_f(const CovariantRepF& rep) {
    const auto vp = rep.v_p(), vq = rep.v_q();
    double r = max_abs_diff(vp * vq, vq * vp);
    r = std::max(r, max_abs_diff(vp * rep.mz, rep.mz.pow(rep.sys.p) * vp));
    r = std::max(r, max_abs_diff(vq * rep.mz, rep.mz.pow(rep.sys.q) * vq));
    r = std::max(r, max_abs_diff(rep.mz.pow(rep.sys.M),
                                 Mat<std::complex<double>>::identity(rep.dim())));
    return r;
}

template <class S>
bool covariance_holds(const CovariantRep<S>& rep, double tol, double* residual) {
    double worst = 0.0;
    bool ok = true;
    for (GroupElement s : {kGenP, kGenQ}) {
        const Mat<S> u = rep.u_of(s), u_inv = rep.u_of(-s);
        for (long x = 0; x < rep.sys.M; ++x) {
            const auto e = FunctionElement<S>::indicator(rep.sys, x);
            const Mat<S> lhs = rep.pi(alpha(rep.sys, s, e));
            const Mat<S> rhs = u * rep.pi(e) * u_inv;
            if constexpr (std::is_same_v<S, Cyclo>) {
                if (!mat_equal(lhs, rhs)) ok = false;
            } else {
                worst = std::max(worst, max_abs_diff(lhs, rhs));
            }
        }
    }
    if constexpr (!std::is_same_v<S, Cyclo>) ok = worst <= tol;
    if (residual) *residual = worst;
    return ok;
}

bool resinv_exact(const CovariantRepX& rep, const InvariantMeasure& mu, std::mt19937_64& rng,
                  int samples) {
    const auto psi = vector_state(rep, rep.unit_vector());
    const std::vector<GroupElement> gens{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (int n = 0; n < samples; ++n) {
        const auto a = random_function(rep.sys, rng);
        const auto mid = CrossedElementX::monomial(a, {0, 0});
        for (GroupElement s : gens)
            for (GroupElement t : gens) {
                auto us = CrossedElementX::monomial(FunctionElementX::one(rep.sys), s);
                auto ut = CrossedElementX::monomial(FunctionElementX::one(rep.sys), t);
                const auto elem = convolve(rep.sys, convolve(rep.sys, us, mid), ut);
                if (!(psi(elem) - state_value(mu, a)).is_zero()) return false;
            }
    }
    return true;
}

double resinv_residual_f(const CovariantRepF& rep, const InvariantMeasure& mu,
                         std::mt19937_64& rng, int samples) {
    const auto psi = vector_state(rep, rep.unit_vector());
    const std::vector<GroupElement> gens{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    double worst = 0.0;
    for (int n = 0; n < samples; ++n) {
        const auto ax = random_function(rep.sys, rng);
        const auto a = crossed_to_float(CrossedElementX::monomial(ax, {0, 0}));
        std::complex<double> phi_a(0.0, 0.0);
        for (long x : mu.support) phi_a += mu.weights[x].get_d() * ax.values[x].to_complex();
        for (GroupElement s : gens)
            for (GroupElement t : gens) {
                auto us = CrossedElementF::monomial(FunctionElementF::one(rep.sys), s);
                auto ut = CrossedElementF::monomial(FunctionElementF::one(rep.sys), t);
                const auto elem = convolve(rep.sys, convolve(rep.sys, us, a), ut);
                worst = std::max(worst, std::abs(psi(elem) - phi_a));
            }
    }
    return worst;
}

bool homomorphism_exact(const CovariantRepX& rep, std::mt19937_64& rng, int pairs) {
    for (int n = 0; n < pairs; ++n) {
        const auto f = random_crossed(rep.sys, rng, 3);
        const auto g = random_crossed(rep.sys, rng, 3);
        if (!mat_equal(evaluate(rep, convolve(rep.sys, f, g)), evaluate(rep, f) * evaluate(rep, g)))
            return false;
        if (!mat_equal(evaluate(rep, adjoint(rep.sys, f)), rep.weighted_adjoint(evaluate(rep, f))))
            return false;
    }
    return mat_equal(evaluate(rep, CrossedElementX::unit(rep.sys)),
                     Mat<Cyclo>::identity(rep.dim()));
}

double homomorphism_residual_f(const CovariantRepF& rep, std::mt19937_64& rng, int pairs) {
    double worst = 0.0;
    for (int n = 0; n < pairs; ++n) {
        const auto fx = random_crossed(rep.sys, rng, 3);
        const auto gx = random_crossed(rep.sys, rng, 3);
        const auto f = crossed_to_float(fx), g = crossed_to_float(gx);
        worst = std::max(worst, max_abs_diff(evaluate(rep, convolve(rep.sys, f, g)),
                                             evaluate(rep, f) * evaluate(rep, g)));
        worst = std::max(worst, max_abs_diff(evaluate(rep, adjoint(rep.sys, f)),
                                             rep.weighted_adjoint(evaluate(rep, f))));
    }
    return worst;
}

struct EntryOutcome {
    Json json;
    bool passed = true;
    std::string failed_check;
};

void record(EntryOutcome& out, Json& checks, const char* name, bool ok) {
    checks[name] = ok;
    if (!ok && out.passed) {
        out.passed = false;
        out.failed_check = name;
    }
}

EntryOutcome verify_entry(const CatalogEntry& entry, const VerifyOptions& opt, bool corrupt) {
    EntryOutcome out;
    Json je;
    je["modulus"] = entry.M;
    je["representative"] = entry.orbit.representative;
    je["dim"] = static_cast<long>(entry.orbit.members.size());
    Json checks;
    std::mt19937_64 rng(0xc0ffee ^ (static_cast<uint64_t>(entry.M) << 20) ^
                        static_cast<uint64_t>(entry.orbit.representative));

    if (opt.exact) {
        CovariantRepX rep = build_rep(entry);
        if (corrupt && rep.dim() >= 2) std::swap(rep.mz(0, 0), rep.mz(1, 1));
        record(out, checks, "relations", relations_exact(rep));
        record(out, checks, "covariance", covariance_holds(rep, 0.0, nullptr));
        record(out, checks, "multiplicative_domain",
               resinv_exact(rep, entry.measure, rng, opt.random_pairs));
        record(out, checks, "homomorphism", homomorphism_exact(rep, rng, opt.random_pairs));
        const long cdim = commutant_dim(rep_operator_set(rep));
        je["commutant_dim"] = cdim;
        record(out, checks, "irreducible", cdim == 1);
        const auto fix = fixed_space(rep);
        je["fixed_dim"] = static_cast<long>(fix.size());
        record(out, checks, "fixed_dim_one", fix.size() == 1);
        record(out, checks, "ergodicity_criterion",
               ergodicity_criterion(entry.measure.sys, entry.measure).pass);
        const auto ch = verify_characterization(rep, entry.M);
        je["n_found"] = ch.n_found;
        record(out, checks, "characterization",
               ch.irreducible && ch.fixed_dim == 1 && ch.zn_fixed && ch.n_found > 0 &&
                   entry.M % ch.n_found == 0 && dimension_bound_check(rep, ch.n_found));
        const auto cert = psd_certificate(entry.measure, opt.psd_order);
        je["psd_order"] = opt.psd_order;
        record(out, checks, "moments_psd", cert.psd);
    } else {
        CovariantRepF rep = build_rep_float(entry);
        if (corrupt && rep.dim() >= 2) std::swap(rep.mz(0, 0), rep.mz(1, 1));
        const double tol = opt.tolerance;
        const double rel = relations_residual_f(rep);
        je["relations_residual"] = float_json(rel);
        record(out, checks, "relations", rel <= tol);
        double cov = 0.0;
        const bool cov_ok = covariance_holds(rep, tol, &cov);
        je["covariance_residual"] = float_json(cov);
        record(out, checks, "covariance", cov_ok);
        const double ri = resinv_residual_f(rep, entry.measure, rng, opt.random_pairs);
        je["multiplicative_domain_residual"] = float_json(ri);
        record(out, checks, "multiplicative_domain", ri <= tol);
        const double hom = homomorphism_residual_f(rep, rng, opt.random_pairs);
        je["homomorphism_residual"] = float_json(hom);
        record(out, checks, "homomorphism", hom <= tol);
        const auto cdim = commutant_dim_f(rep_operator_set(rep));
        je["commutant_dim"] = cdim.dim;
        je["commutant_gap"] = float_json(cdim.gap);
        record(out, checks, "irreducible", cdim.dim == 1);
        const auto fdim = fixed_space_dim_f(rep);
        je["fixed_dim"] = fdim.dim;
        je["fixed_gap"] = float_json(fdim.gap);
        record(out, checks, "fixed_dim_one", fdim.dim == 1);
        // ergodicity via the projection identity holds iff the commutant of
        // the full representation is scalars
        record(out, checks, "ergodicity_criterion", cdim.dim == 1);
        // characterization in float mode: least divisor N of M with
        // ||mz^N v - v|| small on the fixed vector 1^
        long n_found = 0;
        {
            const auto one = rep.unit_vector();
            for (long n : divisors_sorted(entry.M)) {
                const auto w = rep.mz.pow(n).apply(one);
                double r = 0.0;
                for (long i = 0; i < rep.dim(); ++i) r = std::max(r, std::abs(w[i] - one[i]));
                if (r <= tol) {
                    n_found = n;
                    break;
                }
            }
        }
        je["n_found"] = n_found;
        record(out, checks, "characterization",
               cdim.dim == 1 && fdim.dim == 1 && n_found > 0 && rep.dim() <= n_found);
        const auto cert = psd_certificate_f(entry.measure, opt.psd_order);
        je["psd_order"] = opt.psd_order;
        je["psd_min_eigenvalue"] = float_json(cert.min_eigenvalue);
        record(out, checks, "moments_psd", cert.psd);
    }
    je["checks"] = checks;
    je["passed"] = out.passed;
    out.json = std::move(je);
    return out;
}

} // namespace

VerifyOutcome run_verify_suite(const VerifyOptions& opt) {
    const auto entries = catalog(opt.p, opt.q, opt.max_modulus, opt.threads);
    // pick the first entry of dimension >= 2 as the corruption target
    long corrupt_idx = -1;
    if (opt.inject_fault)
        for (size_t i = 0; i < entries.size(); ++i)
            if (entries[i].orbit.members.size() >= 2) {
                corrupt_idx = static_cast<long>(i);
                break;
            }

    std::vector<EntryOutcome> outcomes(entries.size());
    const int nthreads =
        std::min<int>(resolve_thread_count(opt.threads), std::max<size_t>(entries.size(), 1));
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= entries.size()) return;
            outcomes[i] = verify_entry(entries[i], opt, static_cast<long>(i) == corrupt_idx);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    VerifyOutcome res;
    res.all_passed = true;
    Json j;
    j["tool_version"] = kToolVersion;
    j["p"] = opt.p;
    j["q"] = opt.q;
    j["max_modulus"] = opt.max_modulus;
    j["mode"] = opt.exact ? "exact" : "float";
    j["tolerance"] = float_json(opt.tolerance);
    j["multiplicatively_dependent"] = multiplicatively_dependent(opt.p, opt.q);
    j["coprime_reduction_unique"] = gcd_long(opt.p, opt.q) == 1;
    Json arr = Json::array();
    for (size_t i = 0; i < outcomes.size(); ++i) {
        arr.push_back(outcomes[i].json);
        if (!outcomes[i].passed && res.all_passed) {
            res.all_passed = false;
            res.first_failure = "M=" + std::to_string(entries[i].M) +
                                " orbit=" + std::to_string(entries[i].orbit.representative) +
                                " check=" + outcomes[i].failed_check;
        }
    }
    j["entries"] = arr;
    j["all_passed"] = res.all_passed;
    j["first_failure"] = res.first_failure;
    res.report = std::move(j);
    return res;
}

} // namespace xpq
