// Scenario documents: defaults, overrides, rejection paths, presets.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "autoglide/errors.hpp"
#include "autoglide/harness/presets.hpp"
#include "autoglide/harness/scenario.hpp"

using namespace autoglide;
using nlohmann::json;

namespace {

json minimal_doc() {
    return {{"initial",
             {{"north", 13163.0},
              {"east", -7164.9},
              {"alt", 3000.0},
              {"heading_deg", 78.5}}},
            {"sites",
             json::array({{{"id", 1},
                           {"north", 21822.0},
                           {"east", -9751.8},
                           {"elevation", 235.0},
                           {"final_heading_deg", 24.18}}})}};
}

std::string error_of(const json& doc) {
    try {
        harness::parse_scenario(doc);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("a minimal document fills every default") {
    const harness::Scenario sc = harness::parse_scenario(minimal_doc());
    CHECK(sc.mode == harness::RunMode::InProcess);
    CHECK(sc.seed == 0);
    CHECK(sc.dt_plant == 0.01);
    CHECK(sc.dt_predict == 0.1);
    CHECK(sc.terrain_elevation == 235.0);  // lowest site
    CHECK(sc.engine.failure_time_s == 0.25);
    CHECK(sc.engine.rpm_normal == 2400.0);
    CHECK(sc.glider.V_opt == 35.0);
    CHECK(sc.glider.glide_ratio == 9.0);
    CHECK(sc.weather.speed_kts == 0.0);
    CHECK(sc.mission.loiter_radius == 500.0);
    CHECK(sc.feasibility.landing_tolerance == 150.0);
    CHECK(sc.run.max_time_s == 2000.0);
    CHECK(sc.sitl.loss_rate == 0.0);
    REQUIRE(sc.sites.size() == 1);
    CHECK(sc.sites[0].psi_f == doctest::Approx(deg2rad(24.18)).epsilon(1e-12));
}

TEST_CASE("compass headings normalize into the signed range") {
    json doc = minimal_doc();
    doc["sites"][0]["final_heading_deg"] = 270.0;
    const harness::Scenario sc = harness::parse_scenario(doc);
    CHECK(sc.sites[0].psi_f == doctest::Approx(-kPi / 2.0).epsilon(1e-12));
}

TEST_CASE("required blocks are reported together") {
    CHECK(error_of(json::object()) ==
          "missing required blocks: initial, sites");
    json doc = minimal_doc();
    doc.erase("sites");
    CHECK(error_of(doc) == "missing required blocks: sites");
}

TEST_CASE("unknown keys fail with a dotted path") {
    json doc = minimal_doc();
    doc["bogus"] = 1;
    CHECK(error_of(doc) == "bogus: unknown key");

    doc = minimal_doc();
    doc["mission"] = {{"radius", 100.0}};
    CHECK(error_of(doc) == "mission.radius: unknown key");

    doc = minimal_doc();
    doc["sites"][0]["runway"] = "09L";
    CHECK(error_of(doc) == "sites[0].runway: unknown key");

    doc = minimal_doc();
    doc["initial"]["yaw"] = 0.0;
    CHECK(error_of(doc) == "initial.yaw: unknown key");
}

TEST_CASE("every block can be overridden") {
    json doc = minimal_doc();
    doc["mode"] = "sitl";
    doc["seed"] = 42;
    doc["dt_plant"] = 0.02;
    doc["dt_predict"] = 0.05;
    doc["engine"] = {{"failure_time_s", 5.0}, {"rpm_normal", 3000.0}};
    doc["glider"] = {{"V_opt", 33.0}, {"glide_ratio", 8.0},
                     {"alpha_trim_deg", 3.0}};
    doc["weather"] = {{"direction_deg", 20.0},
                      {"speed_kts", 14.0},
                      {"turbulence_pct", 10.0},
                      {"gust_increase_kts", 10.0},
                      {"shear_pct", 10.0}};
    doc["monitor"] = {{"rpm_floor", 250.0},
                      {"decel_limit", 2.5},
                      {"persist_samples", 10},
                      {"identify_window_s", 2.0}};
    doc["envelope"] = {{"theta_min_deg", -25.0}, {"r_max", 1.5}};
    doc["gains"] = {{"F_z", json::array({0.4, 0.5})},
                    {"alpha", 0.2},
                    {"r_max_deg", json::array({20.0, 10.0})},
                    {"ki_gamma", 0.1}};
    doc["mission"] = {{"loiter_radius", 600.0},
                      {"approach_gamma_steep_deg", -15.0}};
    doc["feasibility"] = {{"heading_tolerance_deg", 20.0}, {"horizon_s", 900.0}};
    doc["run"] = {{"max_time_s", 1500.0}};
    doc["sitl"] = {{"loss_rate", 0.1}, {"link_seed", 99}};
    doc["terrain_elevation"] = 100.0;

    const harness::Scenario sc = harness::parse_scenario(doc);
    CHECK(sc.mode == harness::RunMode::Sitl);
    CHECK(sc.seed == 42);
    CHECK(sc.dt_plant == 0.02);
    CHECK(sc.engine.failure_time_s == 5.0);
    CHECK(sc.glider.V_opt == 33.0);
    CHECK(sc.glider.gamma_opt ==
          doctest::Approx(-0.12435499454676144).epsilon(1e-15));
    CHECK(sc.glider.alpha_trim == doctest::Approx(deg2rad(3.0)).epsilon(1e-15));
    CHECK(sc.weather.speed_kts == 14.0);
    CHECK(sc.monitor_cfg.thresholds.persist_samples == 10);
    CHECK(sc.monitor_cfg.identify_window_s == 2.0);
    CHECK(sc.envelope.theta_min == doctest::Approx(deg2rad(-25.0)).epsilon(1e-15));
    CHECK(sc.envelope.r_max == 1.5);
    CHECK(sc.gains.F_z(0, 0) == 0.4);
    CHECK(sc.gains.F_z(1, 1) == 0.5);
    CHECK(sc.gains.F_z(0, 1) == 0.0);
    CHECK(sc.gains.alpha == 0.2);
    CHECK(sc.gains.r_max(0) == doctest::Approx(deg2rad(20.0)).epsilon(1e-15));
    CHECK(sc.gains.ki_gamma == 0.1);
    CHECK(sc.mission.loiter_radius == 600.0);
    CHECK(sc.mission.approach_gamma_steep ==
          doctest::Approx(deg2rad(-15.0)).epsilon(1e-15));
    CHECK(sc.feasibility.heading_tolerance ==
          doctest::Approx(deg2rad(20.0)).epsilon(1e-15));
    CHECK(sc.feasibility.horizon == 900.0);
    CHECK(sc.run.max_time_s == 1500.0);
    CHECK(sc.sitl.loss_rate == 0.1);
    CHECK(sc.sitl.link_seed == 99);
    CHECK(sc.terrain_elevation == 100.0);
}

TEST_CASE("cross-field rules are enforced after parsing") {
    json doc = minimal_doc();
    doc["dt_plant"] = 0.2;
    CHECK(error_of(doc) == "dt_plant: must be in (0, 0.1]");

    doc = minimal_doc();
    doc["initial"]["alt"] = 100.0;  // below the 235 m terrain default
    CHECK(error_of(doc) ==
          "initial.alt: must be above the terrain elevation");

    doc = minimal_doc();
    doc["sitl"] = {{"loss_rate", 1.0}};
    CHECK(error_of(doc) == "sitl.loss_rate: must be in [0, 1)");

    doc = minimal_doc();
    doc["engine"] = {{"rpm_normal", 200.0}};  // under the default rpm floor
    CHECK(error_of(doc) ==
          "engine.rpm_normal: must exceed the monitor rpm floor");

    doc = minimal_doc();
    doc["monitor"] = {{"identify_window_s", 0.0}};
    CHECK(error_of(doc) == "monitor.identify_window_s: must be positive");

    doc = minimal_doc();
    doc["sites"].push_back(doc["sites"][0]);
    CHECK(error_of(doc) == "sites: duplicate site id 1");

    doc = minimal_doc();
    doc["sites"][0].erase("id");
    CHECK(error_of(doc) == "sites[0].id: required");

    doc = minimal_doc();
    doc["sites"] = json::array();
    CHECK(error_of(doc) == "sites: must list at least one landing site");
}

TEST_CASE("type mismatches name the offending field") {
    json doc = minimal_doc();
    doc["seed"] = -1;
    CHECK(error_of(doc) == "seed: expected a non-negative integer");

    doc = minimal_doc();
    doc["dt_plant"] = "fast";
    CHECK(error_of(doc) == "dt_plant: expected a number");

    doc = minimal_doc();
    doc["mode"] = "both";
    CHECK(error_of(doc) == "mode: expected \"in-process\" or \"sitl\"");

    doc = minimal_doc();
    doc["gains"] = {{"F_z", json::array({1.0})}};
    CHECK(error_of(doc) == "gains.F_z: expected [a, b]");

    doc = minimal_doc();
    doc["monitor"] = {{"persist_samples", 2.5}};
    CHECK(error_of(doc) == "monitor.persist_samples: expected an integer");
}

TEST_CASE("every preset parses and validates") {
    const auto names = harness::preset_names();
    REQUIRE(names.size() == 12);
    for (const auto& name : names) {
        CHECK(harness::is_preset(name));
        CHECK_NOTHROW(harness::parse_scenario(harness::preset_doc(name)));
    }
    CHECK(!harness::is_preset("table9_trial1"));
    CHECK_THROWS_AS(harness::preset_doc("table9_trial1"), ValidationError);

    const harness::Scenario t1 =
        harness::parse_scenario(harness::preset_doc("table1_trial1"));
    CHECK(t1.initial.north == 13163.0);
    CHECK(t1.initial.alt == 3000.0);
    CHECK(t1.engine.failure_time_s == 1.0);
    CHECK(t1.seed == 1);
    CHECK(t1.sites.size() == 1);

    const harness::Scenario w3 =
        harness::parse_scenario(harness::preset_doc("table2_trial3"));
    CHECK(w3.weather.direction_deg == 4.0);
    CHECK(w3.weather.speed_kts == 5.0);
    CHECK(w3.weather.turbulence_pct == 10.0);
    CHECK(w3.weather.gust_increase_kts == 8.0);
    CHECK(w3.weather.shear_pct == 14.0);

    const harness::Scenario ev =
        harness::parse_scenario(harness::preset_doc("table3_eval"));
    CHECK(ev.sites.size() == 4);

    const harness::Scenario skip =
        harness::parse_scenario(harness::preset_doc("skip_demo"));
    CHECK(skip.initial.alt == 655.0);
}

TEST_CASE("scenario files round-trip through the loader") {
    const std::string path = "scenario_roundtrip_test.json";
    {
        std::ofstream out(path);
        out << harness::preset_doc("table1_trial2").dump(2);
    }
    const harness::Scenario sc = harness::load_scenario(path);
    CHECK(sc.initial.north == 13353.0);
    CHECK(sc.initial.alt == 4000.0);
    std::remove(path.c_str());

    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK_THROWS_AS(harness::load_scenario(path), ValidationError);
    std::remove(path.c_str());

    CHECK_THROWS_AS(harness::load_scenario("no_such_file.json"),
                    ValidationError);
}
