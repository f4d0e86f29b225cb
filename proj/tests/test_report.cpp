#include <doctest.h>

#include <fstream>

#include "schema_check.hpp"
#include "xpq/report.hpp"

using namespace xpq;

namespace {

nlohmann::json load_schema(const std::string& name) {
    for (const std::string dir : {"docs", "../docs", "../../docs"}) {
        std::ifstream f(dir + "/" + name);
        if (f) return nlohmann::json::parse(f);
    }
    throw std::runtime_error("schema not found: " + name);
}

bool valid_against(const Json& doc, const std::string& schema_name) {
    std::string err;
    const bool ok = schema::validate(nlohmann::json::parse(doc.dump()), load_schema(schema_name), err);
    if (!ok) MESSAGE(err);
    return ok;
}

} // namespace

TEST_CASE("value serialization") {
    CHECK(rational_json(make_rational(-3, 6)) == "-1/2");
    CHECK(rational_from_string("-1/2") == make_rational(-1, 2));
    CHECK(float_json(0.1) == "0.10000000000000001");
    CHECK(float_json(1.0) == "1");
    CHECK(float_json(-2.5e-13) == "-2.4999999999999999e-13");
    const Json cj = cyclo_json(moment(ergodic_measures(make_system(2, 3, 5))[1], 1));
    CHECK(cj["order"] == 5);
    CHECK(cj["coeffs"][0] == "-1/4");
}

TEST_CASE("orbit and catalog reports validate and stay deterministic") {
    CHECK(valid_against(orbits_json(2, 3, 5), "orbits.schema.json"));
    const Json c1 = catalog_json(2, 3, 30, 1);
    const Json c4 = catalog_json(2, 3, 30, 4);
    CHECK(valid_against(c1, "catalog.schema.json"));
    CHECK(dump_json(c1) == dump_json(c4));
    CHECK(dump_json(c1) == dump_json(catalog_json(2, 3, 30, 1)));
}

TEST_CASE("moments report") {
    MomentsOptions opt;
    opt.modulus = 5;
    opt.orbit_rep = 1;
    opt.range = 5;
    opt.psd_order = 4;
    const Json j = moments_json(opt);
    CHECK(valid_against(j, "moments.schema.json"));
    CHECK(j["moments"][0]["value"]["coeffs"][0] == "1/1");
    CHECK(j["moments"][1]["value"]["coeffs"][0] == "-1/4");
    CHECK(j["moments"][5]["value"]["coeffs"][0] == "1/1");
    CHECK(j["psd_certificate"]["psd"] == true);
    CHECK_THROWS_AS(
        [] {
            MomentsOptions bad;
            bad.modulus = 5;
            bad.orbit_rep = 9;
            return moments_json(bad);
        }(),
        DomainError);
}

TEST_CASE("verify suite passes and validates") {
    VerifyOptions opt;
    opt.max_modulus = 25;
    const auto out = run_verify_suite(opt);
    CHECK(out.all_passed);
    CHECK(out.first_failure.empty());
    CHECK(valid_against(out.report, "report.schema.json"));

    // float mode agrees on pass/fail, entry by entry
    VerifyOptions foptions = opt;
    foptions.exact = false;
    foptions.tolerance = 1e-12;
    const auto fout = run_verify_suite(foptions);
    CHECK(fout.all_passed);
    CHECK(valid_against(fout.report, "report.schema.json"));
    REQUIRE(out.report["entries"].size() == fout.report["entries"].size());
    for (size_t i = 0; i < out.report["entries"].size(); ++i)
        CHECK(out.report["entries"][i]["passed"] == fout.report["entries"][i]["passed"]);
}

TEST_CASE("fault injection is caught") {
    VerifyOptions opt;
    opt.max_modulus = 7;
    opt.inject_fault = true;
    const auto out = run_verify_suite(opt);
    CHECK_FALSE(out.all_passed);
    CHECK(out.first_failure.find("check=") != std::string::npos);

    VerifyOptions foptions = opt;
    foptions.exact = false;
    foptions.tolerance = 1e-12;
    const auto fout = run_verify_suite(foptions);
    CHECK_FALSE(fout.all_passed);
}
