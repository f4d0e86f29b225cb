// xpq: finite-scale toolkit for *p,*q dynamics and their crossed-product
// representations. Subcommands: orbits, catalog, verify, moments.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "xpq/report.hpp"

namespace {

constexpr long kModulusCap = 10000;

void write_output(const xpq::Json& j, const std::string& out_path) {
    const std::string text = xpq::dump_json(j);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw xpq::DomainError("cannot open output file " + out_path);
        f << text;
    }
}

void check_cap(long modulus, bool force) {
    if (modulus > kModulusCap && !force)
        throw xpq::DomainError("modulus exceeds cap " + std::to_string(kModulusCap) +
                               "; pass --force to override");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite *p,*q dynamical systems: orbits, measure catalogs, "
                 "representation verification, moment positivity"};
    app.require_subcommand(1);

    long p = 2, q = 3, modulus = 5, max_modulus = 25;
    long orbit_rep = 0, range = 8, psd_order = 0;
    std::string mode = "exact", out_path;
    double tolerance = 1e-10;
    bool force = false, inject_fault = false;
    int threads = 0;

    auto* cmd_orbits = app.add_subcommand("orbits", "list *p,*q orbits of residues mod M");
    cmd_orbits->add_option("--p", p, "multiplier p")->check(CLI::PositiveNumber);
    cmd_orbits->add_option("--q", q, "multiplier q")->check(CLI::PositiveNumber);
    cmd_orbits->add_option("--modulus", modulus, "modulus M, coprime to p*q")->required();
    cmd_orbits->add_option("--out", out_path, "write JSON here instead of stdout");
    cmd_orbits->add_flag("--force", force, "allow moduli beyond the default cap");

    auto* cmd_catalog =
        app.add_subcommand("catalog", "catalog of finitely supported ergodic measures");
    cmd_catalog->add_option("--p", p, "multiplier p")->check(CLI::PositiveNumber);
    cmd_catalog->add_option("--q", q, "multiplier q")->check(CLI::PositiveNumber);
    cmd_catalog->add_option("--max-modulus", max_modulus, "largest modulus to include")
        ->required();
    cmd_catalog->add_option("--out", out_path, "write JSON here instead of stdout");
    cmd_catalog->add_option("--threads", threads, "worker threads (0 = XPQ_THREADS or auto)");
    cmd_catalog->add_flag("--force", force, "allow moduli beyond the default cap");

    auto* cmd_verify =
        app.add_subcommand("verify", "run the representation check battery over the catalog");
    cmd_verify->add_option("--p", p, "multiplier p")->check(CLI::PositiveNumber);
    cmd_verify->add_option("--q", q, "multiplier q")->check(CLI::PositiveNumber);
    cmd_verify->add_option("--max-modulus", max_modulus, "largest modulus to verify");
    cmd_verify->add_option("--mode", mode, "exact | float")
        ->check(CLI::IsMember({"exact", "float"}));
    cmd_verify->add_option("--tolerance", tolerance, "float-mode comparison tolerance");
    cmd_verify->add_option("--psd-order", psd_order, "moment matrix order (default 8)");
    cmd_verify->add_option("--out", out_path, "write JSON here instead of stdout");
    cmd_verify->add_option("--threads", threads, "worker threads (0 = XPQ_THREADS or auto)");
    cmd_verify->add_flag("--force", force, "allow moduli beyond the default cap");
    cmd_verify->add_flag("--inject-fault", inject_fault,
                         "corrupt one entry to exercise the failure path");

    auto* cmd_moments = app.add_subcommand("moments", "moment table and PSD certificate");
    cmd_moments->add_option("--p", p, "multiplier p")->check(CLI::PositiveNumber);
    cmd_moments->add_option("--q", q, "multiplier q")->check(CLI::PositiveNumber);
    cmd_moments->add_option("--modulus", modulus, "modulus M, coprime to p*q")->required();
    cmd_moments->add_option("--orbit-rep", orbit_rep, "orbit representative residue");
    cmd_moments->add_option("--range", range, "moments for k = 0..range");
    cmd_moments->add_option("--psd-order", psd_order, "Toeplitz order for the certificate");
    cmd_moments->add_option("--mode", mode, "exact | float")
        ->check(CLI::IsMember({"exact", "float"}));
    cmd_moments->add_option("--out", out_path, "write JSON here instead of stdout");
    cmd_moments->add_flag("--force", force, "allow moduli beyond the default cap");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_orbits->parsed()) {
            check_cap(modulus, force);
            write_output(xpq::orbits_json(p, q, modulus), out_path);
            return 0;
        }
        if (cmd_catalog->parsed()) {
            check_cap(max_modulus, force);
            write_output(xpq::catalog_json(p, q, max_modulus, threads), out_path);
            return 0;
        }
        if (cmd_verify->parsed()) {
            check_cap(max_modulus, force);
            xpq::VerifyOptions opt;
            opt.p = p;
            opt.q = q;
            opt.max_modulus = max_modulus;
            opt.exact = mode == "exact";
            opt.tolerance = tolerance;
            if (psd_order > 0) opt.psd_order = psd_order;
            opt.threads = threads;
            opt.inject_fault = inject_fault;
            const auto outcome = xpq::run_verify_suite(opt);
            write_output(outcome.report, out_path);
            if (!outcome.all_passed) {
                std::cerr << "verification failed: " << outcome.first_failure << "\n";
                return 1;
            }
            return 0;
        }
        if (cmd_moments->parsed()) {
            check_cap(modulus, force);
            xpq::MomentsOptions opt;
            opt.p = p;
            opt.q = q;
            opt.modulus = modulus;
            opt.orbit_rep = orbit_rep;
            opt.range = range;
            opt.psd_order = psd_order;
            opt.exact = mode == "exact";
            write_output(xpq::moments_json(opt), out_path);
            return 0;
        }
    } catch (const xpq::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
