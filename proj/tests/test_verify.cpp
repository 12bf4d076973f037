#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include "qrtw/verify.hpp"

using namespace qrtw;

TEST_CASE("run_suite passes for every registry example") {
    for (const ExampleInfo& e : list_examples()) {
        CheckReport rep = run_suite(e.name);
        CHECK(rep.overall);
        CHECK(rep.checks.size() >= 15);
        for (const CheckEntry& c : rep.checks) {
            CHECK(c.outcome);
            if (c.mode == "randomized") {
                CHECK(c.trials == 200);
                CHECK(c.sz_bound > 0.0);
                CHECK(c.sz_bound < 1e-6);
            }
        }
    }
}

TEST_CASE("mcm6d defaults to randomized ambient checks, 4d stays exact") {
    CheckReport r6 = run_suite("mcm6d");
    bool any_randomized = false;
    for (const CheckEntry& c : r6.checks)
        if (c.check_id == "ambient-invariant") {
            CHECK(c.mode == "randomized");
            any_randomized = true;
        }
    CHECK(any_randomized);

    CheckReport r4 = run_suite("mcm4d");
    for (const CheckEntry& c : r4.checks) CHECK(c.mode == "exact");
}

TEST_CASE("report JSON schema") {
    CheckReport rep = run_suite("mcm4d", {{{"a", 1}}});
    nlohmann::json j = nlohmann::json::parse(rep.to_json());
    CHECK(j["version"] == "1");
    CHECK(j["example"] == "mcm4d");
    CHECK(j["overall"] == "pass");
    REQUIRE(j["checks"].is_array());
    CHECK(j["checks"].size() == rep.checks.size());
    for (const auto& c : j["checks"]) {
        CHECK(c.contains("check_id"));
        CHECK(c.contains("target"));
        CHECK((c["mode"] == "exact" || c["mode"] == "randomized"));
        CHECK((c["outcome"] == "pass" || c["outcome"] == "fail"));
        CHECK(c.contains("witness"));
        CHECK(c["wall_time"] == 0.0); // zeroed unless timing was requested
    }
}

TEST_CASE("reports are deterministic") {
    SuiteOptions opt;
    opt.seed = 7;
    std::string a = run_suite("adler-yamilov", {}, opt).to_json();
    std::string b = run_suite("adler-yamilov", {}, opt).to_json();
    CHECK(a == b);

    std::string c = run_suite("mcm6d", {}, opt).to_json();
    std::string d = run_suite("mcm6d", {}, opt).to_json();
    CHECK(c == d);
}

TEST_CASE("mutations fail with a witness") {
    for (const char* def : {"reduced.phi.1", "phi.h1", "phi.X.2", "phi.gamma3"}) {
        CheckReport rep = run_suite("mcm4d", {}, {}, def);
        CHECK_FALSE(rep.overall);
        bool witnessed = false;
        for (const CheckEntry& c : rep.checks)
            if (!c.outcome && c.witness && !c.witness->empty()) witnessed = true;
        CHECK(witnessed);
    }
    // the gamma mutation surfaces as a failed load with the counterexample
    CheckReport rep = run_suite("mcm4d", {}, {}, "phi.gamma3");
    REQUIRE(rep.checks.size() == 1);
    CHECK(rep.checks[0].check_id == "load");
    CHECK(rep.checks[0].witness.has_value());
}

TEST_CASE("mode override applies everywhere") {
    SuiteOptions opt;
    opt.mode_override = Mode::Randomized;
    opt.trials = 25;
    CheckReport rep = run_suite("mcm4d-alt-h2", {}, opt);
    CHECK(rep.overall);
    for (const CheckEntry& c : rep.checks)
        if (c.check_id == "ambient-invariant" || c.check_id == "identity")
            CHECK(c.mode == "randomized");
}

TEST_CASE("unknown example still throws") {
    CHECK_THROWS_AS(run_suite("nonesuch"), UnknownExample);
}

TEST_CASE("text rendering carries the verdict") {
    CheckReport rep = run_suite("mcm4d");
    std::string text = rep.to_text();
    CHECK(text.find("PASS mcm4d") != std::string::npos);
    CHECK(text.find("[FAIL]") == std::string::npos);
}
