#include <catch2/catch_amalgamated.hpp>

#include "eqp/checks.hpp"
#include "eqp/scenario.hpp"

using namespace eqp;

TEST_CASE("scenario grammar") {
    SECTION("the C4 example") {
        Scenario s = parse_scenario("group=\"(1 2 3 4)\"; gset=\"G/e + G/(1 3)(2 4)\"");
        CHECK(s.group->order() == 4);
        CHECK(s.gset.size == 6);
        auto orbs = orbits(s.gset);
        REQUIRE(orbs.size() == 2);
        CHECK(orbs[0].size() == 4);
        CHECK(orbs[1].size() == 2);
    }
    SECTION("trivial group on points") {
        Scenario s = parse_scenario("group=\"\"; gset=\"3\"");
        CHECK(s.group->order() == 1);
        CHECK(s.gset.size == 3);
    }
    SECTION("free C2-set of size 4") {
        Scenario s = parse_scenario("group=\"(1 2)\"; gset=\"G/e + G/e\"");
        CHECK(s.gset.size == 4);
        auto iso = isovariance_class(s.gset);
        REQUIRE(iso.has_value());
        CHECK(iso->order() == 1);
    }
    SECTION("comments, newlines, guards and seeds") {
        Scenario s = parse_scenario(
            "# a scenario\nname=\"demo\"\ngroup=\"(1 2)\"\ngset=\"G/e\"\n"
            "guards=\"bell_max=7,chain_max=1000\"\nseed=42\nsamples=10\n");
        CHECK(s.name == "demo");
        CHECK(s.guards.bell_max == 7);
        CHECK(s.guards.chain_max == 1000);
        CHECK(s.seed == 42);
        CHECK(s.samples == 10);
    }
    SECTION("errors carry positions") {
        CHECK_THROWS_AS(parse_scenario("group=\"(1 2)\""), ScenarioError);   // no gset
        CHECK_THROWS_AS(parse_scenario("bogus=\"x\"; gset=\"2\""), ScenarioError);
        CHECK_THROWS_AS(parse_scenario("group=\"(1 2\"; gset=\"2\""), ScenarioError);
        // an orbit-sum term naming a non-element
        CHECK_THROWS_AS(parse_scenario("group=\"(1 2)\"; gset=\"G/(1 3)\""), ScenarioError);
        try {
            parse_scenario("group=\"(1 2)\"\nbogus=\"x\"\ngset=\"2\"");
            FAIL("expected a parse error");
        } catch (const ScenarioError& e) {
            CHECK(e.line == 2);
        }
    }
}

TEST_CASE("run_checks produces one entry per requested check, in catalog order") {
    Scenario s = parse_scenario("group=\"(1 2)\"; gset=\"G/e + 1\"; samples=5");
    checks::Report rep = checks::run_checks(s, {"subgroup-lattice", "partition-homology"});
    REQUIRE(rep.results.size() == 2);
    CHECK(rep.results[0].name == "partition-homology");
    CHECK(rep.results[1].name == "subgroup-lattice");
    CHECK_FALSE(rep.any_failure);
    CHECK_THROWS_AS(checks::run_checks(s, {"no-such-check"}), std::invalid_argument);
}

TEST_CASE("reports are deterministic and parallel-safe") {
    Scenario s = parse_scenario("group=\"(1 2)\"; gset=\"G/e + G/e\"; samples=20");
    checks::Report a = checks::run_checks(s, {}, 1);
    checks::Report b = checks::run_checks(s, {}, 4);
    CHECK(checks::render_json(a) == checks::render_json(b));
    CHECK(checks::render_markdown(a) == checks::render_markdown(b));
    checks::Report c = checks::run_checks(s, {}, 1);
    CHECK(checks::render_json(a) == checks::render_json(c));
}

TEST_CASE("verdicts for the free C2 scenario") {
    Scenario s = parse_scenario("group=\"(1 2)\"; gset=\"G/e + G/e\"; samples=20");
    checks::Report rep = checks::run_checks(s);
    std::map<std::string, std::string> verdicts;
    for (const auto& r : rep.results) verdicts[r.name] = r.verdict;
    CHECK(verdicts["fixed-point-equivalence"] == "PASS");
    CHECK(verdicts["tree-fixed-points"] == "PASS");
    CHECK(verdicts["tree-homeo-roundtrip"] == "PASS");
    CHECK(verdicts["finality-phi"] == "PASS");
    CHECK(verdicts["initiality-last-vertex"] == "PASS");
    CHECK(verdicts["zigzag-betti"] == "PASS");
    CHECK(verdicts["nonisovariant-acyclic"] == "SKIP");   // the set is isovariant
    CHECK(verdicts["isovariant-wedge"] == "PASS");
    CHECK(verdicts["weyl-identity"] == "REPORT");
    CHECK(verdicts["subgroup-lattice"] == "REPORT");
    CHECK(verdicts["lie-character"] == "PASS");
    CHECK(verdicts["solvable-wedge"] == "PASS");
    CHECK_FALSE(rep.any_failure);
}

TEST_CASE("verdicts for a non-isovariant scenario") {
    Scenario s = parse_scenario("group=\"(1 2)\"; gset=\"G/e + 1\"; samples=10");
    checks::Report rep = checks::run_checks(
        s, {"nonisovariant-acyclic", "isovariant-wedge", "solvable-wedge"});
    std::map<std::string, std::string> verdicts;
    for (const auto& r : rep.results) verdicts[r.name] = r.verdict;
    CHECK(verdicts["nonisovariant-acyclic"] == "PASS");
    CHECK(verdicts["isovariant-wedge"] == "SKIP");
    CHECK(verdicts["solvable-wedge"] == "SKIP");
}

TEST_CASE("guard violations surface as SKIP, not failure") {
    Scenario s = parse_scenario(
        "group=\"\"; gset=\"6\"; guards=\"bell_max=4\"");
    checks::Report rep = checks::run_checks(s, {"partition-homology"});
    REQUIRE(rep.results.size() == 1);
    CHECK(rep.results[0].verdict == "SKIP");
    CHECK_FALSE(rep.any_failure);
}
