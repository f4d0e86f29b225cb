// Acceptance suite: one criterion per section, each printed as a PASS/FAIL
// line with its runtime. Exit code 0 iff every criterion passed.
//
//   acceptance [--cli PATH] [--schema-dir DIR]
//
// --cli is required for the determinism criterion (it invokes the real
// binary); everything else runs in-process.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "xpq/report.hpp"

using namespace xpq;

namespace {

struct CriterionResult {
    int id;
    std::string label;
    bool passed;
    std::string detail;
    double seconds;
};

std::vector<CriterionResult> g_results;

template <class F>
void run_criterion(int id, const std::string& label, F&& body, double max_seconds = 0.0) {
    CriterionResult res{id, label, true, "", 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(res);
    } catch (const std::exception& e) {
        res.passed = false;
        res.detail = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (res.passed && max_seconds > 0.0 && res.seconds > max_seconds) {
        res.passed = false;
        res.detail = "runtime bound " + std::to_string(max_seconds) + "s exceeded";
    }
    std::printf("CRITERION %2d %s (%.1fs) %s%s%s\n", id, res.passed ? "PASS" : "FAIL", res.seconds,
                label.c_str(), res.detail.empty() ? "" : " -- ", res.detail.c_str());
    std::fflush(stdout);
    g_results.push_back(res);
}

void fail(CriterionResult& res, const std::string& detail) {
    res.passed = false;
    if (res.detail.empty()) res.detail = detail;
}

std::vector<long> moduli_coprime_to_six(long bound) {
    std::vector<long> out;
    for (long m = 1; m <= bound; ++m)
        if (std::gcd(m, 6L) == 1) out.push_back(m);
    return out;
}

// ---- criterion 1: *-algebra axioms ----------------------------------------

void criterion_algebra_axioms(CriterionResult& res) {
    std::mt19937_64 rng(0xA1);
    const std::vector<long> moduli{1, 5, 7, 11};
    long elements = 0;
    int triples = 0;
    while (elements < 1000) {
        const FiniteSystem sys = make_system(2, 3, moduli[rng() % moduli.size()]);
        const auto f = oracle::random_crossed(sys, rng, 3);
        const auto g = oracle::random_crossed(sys, rng, 3);
        const auto h = oracle::random_crossed(sys, rng, 3);
        elements += 3;
        ++triples;
        const auto e = CrossedElementX::unit(sys);
        if (!crossed_equal(convolve(sys, convolve(sys, f, g), h),
                           convolve(sys, f, convolve(sys, g, h))))
            return fail(res, "associativity violated (exact)");
        if (!crossed_equal(convolve(sys, e, f), f) || !crossed_equal(convolve(sys, f, e), f))
            return fail(res, "unit law violated (exact)");
        if (!crossed_equal(adjoint(sys, adjoint(sys, f)), f))
            return fail(res, "involution not involutive (exact)");
        if (!crossed_equal(adjoint(sys, convolve(sys, f, g)),
                           convolve(sys, adjoint(sys, g), adjoint(sys, f))))
            return fail(res, "anti-homomorphism law violated (exact)");

        const auto ff = oracle::to_float(f), gf = oracle::to_float(g), hf = oracle::to_float(h);
        const auto ef = CrossedElementF::unit(sys);
        double r = crossed_residual(convolve(sys, convolve(sys, ff, gf), hf),
                                    convolve(sys, ff, convolve(sys, gf, hf)));
        r = std::max(r, crossed_residual(convolve(sys, ef, ff), ff));
        r = std::max(r, crossed_residual(adjoint(sys, adjoint(sys, ff)), ff));
        r = std::max(r, crossed_residual(adjoint(sys, convolve(sys, ff, gf)),
                                         convolve(sys, adjoint(sys, gf), adjoint(sys, ff))));
        if (r > 1e-12) return fail(res, "float residual " + std::to_string(r) + " > 1e-12");
    }
    res.detail = std::to_string(elements) + " elements in " + std::to_string(triples) + " triples";
}

// ---- criterion 2: covariance + homomorphism --------------------------------

void criterion_covariant_lemma(CriterionResult& res) {
    std::mt19937_64 rng(0xA2);
    for (long m : moduli_coprime_to_six(100)) {
        const FiniteSystem sys = make_system(2, 3, m);
        std::vector<CovariantRepX> reps;
        for (const auto& mu : ergodic_measures(sys)) {
            const auto rep = covariant_rep_exact(sys, mu);
            for (GroupElement s : {kGenP, kGenQ}) {
                const auto u = rep.u_of(s), u_inv = rep.u_of(-s);
                for (long x = 0; x < sys.M; ++x) {
                    const auto e = FunctionElementX::indicator(sys, x);
                    if (!mat_equal(rep.pi(alpha(sys, s, e)), u * rep.pi(e) * u_inv))
                        return fail(res, "covariance failed at M=" + std::to_string(m));
                }
            }
            reps.push_back(std::move(rep));
        }
        for (int pair = 0; pair < 100; ++pair) {
            const auto& rep = reps[pair % reps.size()];
            const auto f = oracle::random_crossed(sys, rng, 3);
            const auto g = oracle::random_crossed(sys, rng, 3);
            if (!mat_equal(evaluate(rep, convolve(sys, f, g)),
                           evaluate(rep, f) * evaluate(rep, g)))
                return fail(res, "evaluate not multiplicative at M=" + std::to_string(m));
            if (!mat_equal(evaluate(rep, adjoint(sys, f)),
                           rep.weighted_adjoint(evaluate(rep, f))))
                return fail(res, "evaluate not *-preserving at M=" + std::to_string(m));
        }
    }
}

// ---- criterion 3: multiplicative domain identity ---------------------------

void criterion_multiplicative_domain(CriterionResult& res) {
    std::mt19937_64 rng(0xA3);
    const std::vector<GroupElement> gens{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (long m : moduli_coprime_to_six(100)) {
        const FiniteSystem sys = make_system(2, 3, m);
        for (const auto& mu : ergodic_measures(sys)) {
            const auto rep = covariant_rep_exact(sys, mu);
            const auto psi = vector_state(rep, rep.unit_vector());
            for (int sample = 0; sample < 2; ++sample) {
                const auto a = oracle::random_function(sys, rng);
                Cyclo phi_a;
                for (long x : mu.support) phi_a += Cyclo(mu.weights[x]) * a.values[x];
                const auto mid = CrossedElementX::monomial(a, {0, 0});
                for (GroupElement s : gens)
                    for (GroupElement t : gens) {
                        const auto us = CrossedElementX::monomial(FunctionElementX::one(sys), s);
                        const auto ut = CrossedElementX::monomial(FunctionElementX::one(sys), t);
                        const auto elem = convolve(sys, convolve(sys, us, mid), ut);
                        if (!(psi(elem) - phi_a).is_zero())
                            return fail(res, "identity failed at M=" + std::to_string(m));
                    }
            }
        }
    }
}

// ---- shared catalog precomputation for criteria 4 and 7 --------------------

struct EntryAnalysis {
    const CatalogEntry* entry;
    long commutant = 0;
    long fixed = 0;
    CharacterizationReport ch;
    RankDecision commutant_f, fixed_f;
};

std::vector<CatalogEntry> g_catalog200;
std::vector<EntryAnalysis> g_analysis200;

void precompute_catalog_analysis() {
    g_catalog200 = catalog(2, 3, 200);
    for (const auto& e : g_catalog200) {
        EntryAnalysis a;
        a.entry = &e;
        const auto rep = build_rep(e);
        a.commutant = commutant_dim(rep_operator_set(rep));
        a.fixed = static_cast<long>(fixed_space(rep).size());
        a.ch = verify_characterization(rep, e.M);
        const auto repf = build_rep_float(e);
        a.commutant_f = commutant_dim_f(rep_operator_set(repf));
        a.fixed_f = fixed_space_dim_f(repf);
        g_analysis200.push_back(a);
    }
}

// ---- criterion 4: irreducibility and fixed-space dimensions ---------------

void criterion_ergodic_irreducible(CriterionResult& res) {
    for (const auto& a : g_analysis200) {
        if (a.commutant != 1)
            return fail(res, "commutant dim != 1 at M=" + std::to_string(a.entry->M));
        if (a.fixed != 1) return fail(res, "fixed dim != 1 at M=" + std::to_string(a.entry->M));
        if (a.commutant_f.dim != 1 || a.commutant_f.gap <= 1e-6)
            return fail(res, "float commutant margin at M=" + std::to_string(a.entry->M));
        if (a.fixed_f.dim != 1 || a.fixed_f.gap <= 1e-6)
            return fail(res, "float fixed-space margin at M=" + std::to_string(a.entry->M));
    }

    // non-ergodic convex combinations over >= 2 orbits
    std::mt19937_64 rng(0xA4);
    std::vector<long> pool;
    for (long m : moduli_coprime_to_six(100))
        if (m > 1) pool.push_back(m);
    for (int instance = 0; instance < 50; ++instance) {
        const long m = pool[rng() % pool.size()];
        const FiniteSystem sys = make_system(2, 3, m);
        const auto ms = ergodic_measures(sys);
        const long n_orb = static_cast<long>(ms.size());
        const long k = 2 + static_cast<long>(rng() % (n_orb - 1));
        std::vector<long> idx(n_orb);
        std::iota(idx.begin(), idx.end(), 0L);
        std::shuffle(idx.begin(), idx.end(), rng);
        std::vector<std::pair<InvariantMeasure, Rational>> mix;
        Rational total(0);
        std::vector<Rational> parts;
        for (long t = 0; t < k; ++t) {
            parts.push_back(make_rational(1 + static_cast<long>(rng() % 5)));
            total += parts.back();
        }
        for (long t = 0; t < k; ++t) mix.emplace_back(ms[idx[t]], parts[t] / total);
        const auto mu = InvariantMeasure::convex(mix);
        const auto rep = covariant_rep_exact(sys, mu);
        const long cd = commutant_dim(rep_operator_set(rep));
        const long fd = static_cast<long>(fixed_space(rep).size());
        if (cd < 2) return fail(res, "non-ergodic commutant dim < 2 at M=" + std::to_string(m));
        if (fd != k)
            return fail(res, "non-ergodic fixed dim != charged orbits at M=" + std::to_string(m));
    }
}

// ---- criterion 5: uniqueness and unitary conjugation ------------------------

Eigen::MatrixXcd haar_unitary(long d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd z(d, d);
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) z(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd u = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (long j = 0; j < d; ++j) u.col(j) *= r(j, j) / std::abs(r(j, j));
    return u;
}

Mat<std::complex<double>> from_eigen(const Eigen::MatrixXcd& m) {
    Mat<std::complex<double>> out(m.rows(), m.cols());
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

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

void criterion_uniqueness(CriterionResult& res) {
    std::mt19937_64 rng(0xA5);
    for (long m : moduli_coprime_to_six(50)) {
        const FiniteSystem sys = make_system(2, 3, m);
        const auto ms = ergodic_measures(sys);
        std::vector<CovariantRepX> reps;
        for (const auto& mu : ms) reps.push_back(covariant_rep_exact(sys, mu));
        for (size_t i = 0; i < reps.size(); ++i)
            for (size_t j = i + 1; j < reps.size(); ++j)
                if (intertwiner_dim(reps[i], reps[j]) != 0)
                    return fail(res, "distinct measures intertwine at M=" + std::to_string(m));
        // conjugate each rep by a Haar unitary: intertwiner dimension 1
        for (const auto& mu : ms) {
            const auto repf = covariant_rep_float(sys, mu);
            const auto a = matched_generator_set(repf);
            const Eigen::MatrixXcd u = haar_unitary(repf.dim(), rng);
            OperatorSetF b;
            b.dim = repf.dim();
            for (const auto& g : a.gens) b.gens.push_back(from_eigen(u * to_eigen(g) * u.adjoint()));
            const auto dec = intertwiner_dim_f(a, b);
            if (dec.dim != 1)
                return fail(res, "conjugated intertwiner dim != 1 at M=" + std::to_string(m));
        }
        // exact-arithmetic conjugation spot checks on small systems
        if (m <= 13) {
            for (const auto& rx : reps) {
                const auto a = matched_generator_set(rx);
                const Mat<Cyclo> q = rational_orthogonal(rx.dim(), rng);
                const Mat<Cyclo> qt = q.transpose();
                OperatorSetX b;
                b.dim = rx.dim();
                for (const auto& g : a.gens) b.gens.push_back(q * g * qt);
                if (intertwiner_dim(a, b) != 1)
                    return fail(res, "exact conjugated intertwiner dim != 1 at M=" + std::to_string(m));
            }
        }
    }
}

// ---- criterion 6: ergodicity via the projection identity -------------------

void criterion_ergodicity(CriterionResult& res) {
    for (long m : moduli_coprime_to_six(100)) {
        const FiniteSystem sys = make_system(2, 3, m);
        for (const auto& mu : ergodic_measures(sys))
            if (!ergodicity_criterion(sys, mu).pass)
                return fail(res, "ergodic measure rejected at M=" + std::to_string(m));
    }
    const FiniteSystem sys = make_system(2, 3, 5);
    const auto ms = ergodic_measures(sys);
    const auto mix =
        InvariantMeasure::convex({{ms[0], make_rational(1, 2)}, {ms[1], make_rational(1, 2)}});
    const auto out = ergodicity_criterion(sys, mix);
    if (out.pass) return fail(res, "mixture accepted as ergodic");
    if (!out.witness.has_value()) return fail(res, "no witness produced");
    if (out.lhs.rational_value() != make_rational(1, 2) ||
        out.rhs.rational_value() != make_rational(1, 4))
        return fail(res, "witness values differ from 1/2 and 1/4");
}

// ---- criterion 7: finite-representation characterization -------------------

void criterion_characterization(CriterionResult& res) {
    for (const auto& a : g_analysis200) {
        const long m = a.entry->M;
        if (!a.ch.irreducible || a.ch.fixed_dim != 1 || !a.ch.zn_fixed)
            return fail(res, "characterization failed at M=" + std::to_string(m));
        if (a.ch.n_found <= 0 || m % a.ch.n_found != 0)
            return fail(res, "N_found does not divide M=" + std::to_string(m));
        if (static_cast<long>(a.entry->orbit.members.size()) > a.ch.n_found)
            return fail(res, "dimension bound violated at M=" + std::to_string(m));
    }

    // catalog completeness against brute-force enumeration over all N <= 30
    const auto expected = oracle::uniform_invariant_measures(2, 3, 30);
    std::set<oracle::CircleMeasure> got;
    for (const auto& e : catalog(2, 3, 30)) {
        oracle::CircleMeasure meas;
        for (long mm : e.orbit.members) meas.insert(oracle::reduce_fraction(mm, e.M));
        got.insert(meas);
    }
    if (got != expected) return fail(res, "catalog differs from the brute-force enumeration");

    for (long n = 1; n <= 10000; ++n) {
        const auto r = coprime_reduction(2, 3, n);
        long back = r.M;
        for (long t = 0; t < r.i; ++t) back *= 2;
        for (long t = 0; t < r.j; ++t) back *= 3;
        if (back != n || std::gcd(r.M, 6L) != 1)
            return fail(res, "coprime reduction failed at N=" + std::to_string(n));
    }
}

// ---- criterion 8: moment positivity ----------------------------------------

void criterion_bochner(CriterionResult& res) {
    std::mt19937_64 rng(0xA8);
    std::vector<InvariantMeasure> measures;
    for (const auto& e : catalog(2, 3, 50)) measures.push_back(e.measure);
    for (const auto& mu : measures) {
        const auto cert = psd_certificate(mu, 20);
        if (!cert.psd)
            return fail(res, "exact PSD certificate failed at M=" + std::to_string(mu.sys.M));
        const auto certf = psd_certificate_f(mu, 20);
        if (certf.min_eigenvalue < -1e-10 * 20)
            return fail(res, "float min eigenvalue at M=" + std::to_string(mu.sys.M));
    }
    for (int family = 0; family < 500; ++family) {
        const auto& mu = measures[rng() % measures.size()];
        std::map<ExponentTriple, Cyclo> coeffs;
        const int n = 1 + static_cast<int>(rng() % 4);
        for (int t = 0; t < n; ++t) {
            const ExponentTriple e{static_cast<long>(rng() % 11) - 5,
                                   static_cast<long>(rng() % 5) - 2,
                                   static_cast<long>(rng() % 5) - 2};
            coeffs[e] = Cyclo::gaussian(oracle::random_rational(rng), oracle::random_rational(rng));
        }
        const Cyclo value = positive_combination_check(mu, coeffs);
        if (!value.is_real()) return fail(res, "quadratic form value not real");
        if (value.sign_real() < 0) return fail(res, "quadratic form negative");
        if (!(value - oracle::gram_expansion(mu, coeffs)).is_zero())
            return fail(res, "value differs from the Gram-expansion oracle");
    }
}

// ---- criterion 9: noncommutative counterexample -----------------------------

void criterion_noncommutative(CriterionResult& res) {
    OperatorSetX ops;
    ops.dim = 2;
    for (long i = 0; i < 2; ++i)
        for (long j = 0; j < 2; ++j) {
            Mat<Cyclo> e(2, 2);
            e(i, j) = Cyclo(1);
            ops.gens.push_back(e);
        }
    const auto eye = Mat<Cyclo>::identity(2);
    ops.gens.push_back(eye);
    ops.gens.push_back(eye);
    if (!is_irreducible(ops)) return fail(res, "identity rep of M_2 not irreducible");
    if (fixed_space_of({eye, eye}, {}).size() != 2)
        return fail(res, "fixed space of the trivial action is not 2-dimensional");
}

// ---- criterion 10: CLI determinism and exit codes ---------------------------

std::string g_cli_path;

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void criterion_determinism(CriterionResult& res) {
    if (g_cli_path.empty()) return fail(res, "--cli not given");
    const std::string base = "/tmp/xpq_accept_" + std::to_string(::getpid());
    auto run = [&](const std::string& args) {
        return std::system((g_cli_path + " " + args + " > /dev/null 2>&1").c_str());
    };
    const std::string flags = " catalog --p 2 --q 3 --max-modulus 60";
    if (std::system((g_cli_path + flags + " --threads 1 --out " + base + "_a.json").c_str()) != 0)
        return fail(res, "catalog run failed");
    if (std::system((g_cli_path + flags + " --threads 1 --out " + base + "_b.json").c_str()) != 0)
        return fail(res, "catalog rerun failed");
    if (std::system((g_cli_path + flags + " --threads 8 --out " + base + "_c.json").c_str()) != 0)
        return fail(res, "catalog threaded run failed");
    const std::string a = slurp(base + "_a.json");
    if (a.empty() || a != slurp(base + "_b.json"))
        return fail(res, "reruns are not byte-identical");
    if (a != slurp(base + "_c.json"))
        return fail(res, "thread counts 1 and 8 differ");

    // exit code contract: 2 on input errors, 1 on verification failure
    int rc = run("orbits --p 2 --q 3 --modulus 6");
    if (!WIFEXITED(rc) || WEXITSTATUS(rc) != 2) return fail(res, "input error is not exit 2");
    rc = run("verify --p 2 --q 3 --max-modulus 7 --inject-fault");
    if (!WIFEXITED(rc) || WEXITSTATUS(rc) != 1)
        return fail(res, "verification failure is not exit 1");
    rc = run("orbits --p 2 --q 3 --modulus 35");
    if (!WIFEXITED(rc) || WEXITSTATUS(rc) != 0) return fail(res, "success is not exit 0");
}

} // namespace

int main(int argc, char** argv) {
    std::string schema_dir;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--cli") g_cli_path = argv[i + 1];
        if (std::string(argv[i]) == "--schema-dir") schema_dir = argv[i + 1];
    }

    run_criterion(1, "algebra axioms on randomized elements", criterion_algebra_axioms, 30.0);
    run_criterion(2, "covariant representation suite (M <= 100)", criterion_covariant_lemma,
                  120.0);
    run_criterion(3, "multiplicative domain identity (M <= 100)",
                  criterion_multiplicative_domain);

    precompute_catalog_analysis();
    run_criterion(4, "irreducibility and fixed spaces (catalog M <= 200)",
                  criterion_ergodic_irreducible);
    run_criterion(5, "uniqueness and unitary conjugation (M <= 50)", criterion_uniqueness);
    run_criterion(6, "ergodicity via the projection identity", criterion_ergodicity);
    run_criterion(7, "finite-representation characterization", criterion_characterization);
    run_criterion(8, "moment positivity and Gram oracle", criterion_bochner);
    run_criterion(9, "noncommutative counterexample", criterion_noncommutative);
    run_criterion(10, "CLI determinism and exit codes", criterion_determinism);

    int failed = 0;
    for (const auto& r : g_results)
        if (!r.passed) ++failed;
    std::printf("ACCEPTANCE: %d/%d criteria passed\n", static_cast<int>(g_results.size()) - failed,
                static_cast<int>(g_results.size()));
    return failed == 0 ? 0 : 1;
}
