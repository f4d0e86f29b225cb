#pragma once

#include <json.hpp>

#include <string>

#include "xpq/furstenberg.hpp"

namespace xpq {

inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

// serialization helpers shared by all commands; exactness survives the trip
Json rational_json(const Rational& r);
Json cyclo_json(const Cyclo& c);
// floats are emitted as strings with 17 significant digits so byte output is
// reproducible across platforms and runs
Json float_json(double x);

Json orbits_json(long p, long q, long modulus);
Json catalog_json(long p, long q, long max_modulus, int threads = 0);
std::string dump_json(const Json& j);

struct MomentsOptions {
    long p = 2, q = 3;
    long modulus = 1;
    long orbit_rep = 0;
    long range = 8;
    long psd_order = 0; // 0 = skip certificate
    bool exact = true;
};

Json moments_json(const MomentsOptions& opt);

struct VerifyOptions {
    long p = 2, q = 3;
    long max_modulus = 25;
    bool exact = true;
    double tolerance = 1e-10;
    long psd_order = 8;
    int random_pairs = 4; // random *-homomorphism / ResInv samples per entry
    int threads = 0;
    bool inject_fault = false; // corrupt one entry, for exercising failure paths
};

struct VerifyOutcome {
    bool all_passed = false;
    std::string first_failure; // "M=5 orbit=1 check=covariance" style
    Json report;
};

// Runs the per-entry check battery (generator relations, covariance,
// multiplicative-domain identity, homomorphism property, irreducibility,
// fixed-space dimension, ergodicity criterion, the finite characterization,
// moment positivity) over the whole catalog up to max_modulus.
VerifyOutcome run_verify_suite(const VerifyOptions& opt);

} // namespace xpq
