#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "icnoma/scenario.hpp"

using namespace icnoma;

namespace {

// Minimal scenario text with a caller-supplied users array and optional
// extra top-level fields (", \"sim\": {...}" style).
std::string scenario_text(const std::string& users, const std::string& extra = "") {
    return "{\"version\": 1, \"messages\": 7, \"power\": 10.0, \"alpha\": 0.25, "
           "\"users\": " +
           users + extra + "}";
}

const std::string kOneUser = "[{\"gain\": 1.0, \"known\": [], \"wants\": [1]}]";

std::string parse_error(const std::string& text) {
    try {
        parse_scenario(text);
        return "";
    } catch (const ScenarioError& e) {
        return e.what();
    }
}

}   // namespace

TEST_CASE("bundled example1 parses into the expected scenario") {
    const Scenario s = parse_scenario(bundled_scenario("example1"));
    CHECK(s.messages == 3);
    CHECK(s.power == 10.0);
    CHECK(s.alpha == 0.25);
    CHECK(s.gains == std::vector<double>{1.0, 0.95, 0.2});
    REQUIRE(s.known.size() == 3);
    CHECK(s.known[0] == BitMatrix(3, {0b010}));
    CHECK(s.known[1] == BitMatrix(3, {0b001}));
    CHECK(s.known[2] == BitMatrix(3));
    CHECK(s.wants == std::vector<std::set<int>>{{0}, {1}, {2}});
    REQUIRE(s.sim.has_value());
    CHECK(s.sim->packet_bits == 32);
    CHECK(s.sim->noise_variance == std::vector<double>{0.0});
    CHECK(s.sim->trials == 200);
    CHECK(s.sim->seed == 1);
}

TEST_CASE("scenarios build problems, groupings and channels") {
    const Scenario s = parse_scenario(bundled_scenario("example2"));
    const IndexCodingProblem p = build_problem(s);
    CHECK(p.message_count() == 7);
    REQUIRE(p.receiver_count() == 5);
    // Raw demands shed what the side information already covers.
    CHECK(p.receiver(0).wants() == std::set<int>{3, 4, 5});
    CHECK(p.receiver(4).wants() == std::set<int>{2});

    const UserGrouping g = scenario_grouping(s);
    CHECK(g.near == std::vector<int>{0, 1, 2});
    CHECK(g.far == std::vector<int>{3, 4});

    const ChannelProfile c = scenario_channel(s);
    CHECK(c.g_far == doctest::Approx(0.2));
    CHECK(c.g_near == doctest::Approx(1.0));
    CHECK(c.power == 10.0);
    CHECK(c.alpha == 0.25);
}

TEST_CASE("serialization round-trips every bundled scenario") {
    for (const std::string& name : bundled_scenario_names()) {
        const Scenario s = parse_scenario(bundled_scenario(name));
        CHECK(parse_scenario(serialize_scenario(s)) == s);
        CHECK(serialize_scenario(s).back() == '\n');
    }
}

TEST_CASE("serialization round-trips coded rows, noise arrays and no sim") {
    const std::string text = scenario_text(
        "[{\"gain\": 1.0, \"known\": [[1, 3], 2], \"wants\": [4]},"
        " {\"gain\": 0.2, \"known\": [], \"wants\": [1, 2]}]",
        ", \"sim\": {\"noise_variance\": [0.1, 0.4]}");
    const Scenario s = parse_scenario(text);
    CHECK(s.known[0] == BitMatrix(7, {0b0000101, 0b0000010}));
    REQUIRE(s.sim.has_value());
    CHECK(s.sim->noise_variance == std::vector<double>{0.1, 0.4});
    CHECK(s.sim->trials == 100);   // defaults fill the rest
    CHECK(parse_scenario(serialize_scenario(s)) == s);

    Scenario bare = s;
    bare.sim.reset();
    CHECK(parse_scenario(serialize_scenario(bare)) == bare);
    CHECK(bare != s);
}

TEST_CASE("structural errors name the offending field") {
    CHECK(parse_error("{\"version\": 2}").find("version: unsupported schema version 2") == 0);
    CHECK(parse_error("{}") == "version: missing field");
    CHECK(parse_error("not json").rfind("invalid JSON:", 0) == 0);
    CHECK(parse_error("[]") == "scenario: top level must be an object");

    CHECK(parse_error("{\"version\": 1, \"messages\": 0, \"power\": 1.0, \"alpha\": 0.25, "
                      "\"users\": " +
                      kOneUser + "}") == "messages: must be in [1, 64]");
    CHECK(parse_error("{\"version\": 1, \"messages\": 7, \"power\": 0.0, \"alpha\": 0.25, "
                      "\"users\": " +
                      kOneUser + "}") == "power: must be positive");
    CHECK(parse_error("{\"version\": 1, \"messages\": 7, \"power\": 1.0, \"alpha\": 0.5, "
                      "\"users\": " +
                      kOneUser + "}") == "alpha: must lie in (0, 0.5)");
    CHECK(parse_error(scenario_text("[]")) == "users: must be a non-empty array");
    CHECK(parse_error(scenario_text("[3]")) == "users[0]: must be an object");
}

TEST_CASE("user errors carry the array position and the 1-based index") {
    CHECK(parse_error(scenario_text("[{\"known\": [], \"wants\": []}]")) ==
          "users[0].gain: missing field");
    CHECK(parse_error(scenario_text("[{\"gain\": 0.0, \"known\": [], \"wants\": []}]")) ==
          "users[0].gain: must be positive");
    CHECK(parse_error(scenario_text("[{\"gain\": 1.0, \"known\": 3, \"wants\": []}]")) ==
          "users[0].known: must be an array");
    CHECK(parse_error(scenario_text("[{\"gain\": 1.0, \"known\": [9], \"wants\": []}]")) ==
          "users[0].known[0]: message index 9 out of range [1, 7]");
    CHECK(parse_error(scenario_text("[{\"gain\": 1.0, \"known\": [1.5], \"wants\": []}]")) ==
          "users[0].known[0]: must be a message index or an array of indices");
    CHECK(parse_error(scenario_text("[{\"gain\": 1.0, \"known\": [[]], \"wants\": []}]")) ==
          "users[0].known[0]: empty index combination");
    CHECK(parse_error(scenario_text("[{\"gain\": 1.0, \"known\": [[1, 1]], \"wants\": []}]")) ==
          "users[0].known[0]: duplicate message index 1");

    const std::string third_user_bad_want = scenario_text(
        "[{\"gain\": 1.0, \"known\": [], \"wants\": []},"
        " {\"gain\": 1.0, \"known\": [], \"wants\": []},"
        " {\"gain\": 0.2, \"known\": [], \"wants\": [3, 9]}]");
    CHECK(parse_error(third_user_bad_want) ==
          "users[2].wants[1]: message index 9 out of range [1, 7]");
    CHECK(parse_error(scenario_text("[{\"gain\": 1.0, \"known\": [], \"wants\": [2, 2]}]")) ==
          "users[0].wants[1]: duplicate message index 2");
}

TEST_CASE("sim block errors name the sim fields") {
    CHECK(parse_error(scenario_text(kOneUser, ", \"sim\": {\"packet_bits\": 0}")) ==
          "sim.packet_bits: must be in [1, 1048576]");
    CHECK(parse_error(scenario_text(kOneUser, ", \"sim\": {\"trials\": 0}")) ==
          "sim.trials: must be in [1, 1e8]");
    CHECK(parse_error(scenario_text(kOneUser, ", \"sim\": {\"seed\": -1}")) ==
          "sim.seed: must be nonnegative");
    CHECK(parse_error(scenario_text(kOneUser, ", \"sim\": {\"noise_variance\": -0.5}")) ==
          "sim.noise_variance: must be nonnegative");
    CHECK(parse_error(scenario_text(kOneUser, ", \"sim\": {\"noise_variance\": [0.1, 0.1]}")) ==
          "sim.noise_variance: must hold one value or one per user");
}

TEST_CASE("parse_scenario_file prefixes errors with the path") {
    CHECK_THROWS_WITH_AS(parse_scenario_file("/nonexistent/s.json"),
                         "cannot open scenario file: /nonexistent/s.json", ScenarioError);

    const std::string good = "/tmp/icnoma_scenario_ok.json";
    {
        std::ofstream out(good);
        out << bundled_scenario("example1");
    }
    CHECK(parse_scenario_file(good) == parse_scenario(bundled_scenario("example1")));

    const std::string bad = "/tmp/icnoma_scenario_bad.json";
    {
        std::ofstream out(bad);
        out << "{\"version\": 9}";
    }
    CHECK_THROWS_WITH_AS(parse_scenario_file(bad),
                         (bad + ": version: unsupported schema version 9").c_str(),
                         ScenarioError);
    std::remove(good.c_str());
    std::remove(bad.c_str());
}

TEST_CASE("the bundle holds the six named scenarios") {
    const std::vector<std::string> names = bundled_scenario_names();
    CHECK(names == std::vector<std::string>{"example1", "example2", "example3", "table8_case1",
                                            "table8_case2", "table8_case3"});
    for (const std::string& name : names) CHECK_NOTHROW(parse_scenario(bundled_scenario(name)));
    CHECK_THROWS_AS(bundled_scenario("nope"), std::invalid_argument);
}
