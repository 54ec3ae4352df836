// End-to-end runs, endpoint protocol behavior, logging, exit codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>
#include <sstream>
#include <string>

#include "autoglide/errors.hpp"
#include "autoglide/harness/endpoint.hpp"
#include "autoglide/harness/presets.hpp"
#include "autoglide/harness/scenario.hpp"
#include "autoglide/harness/simulation.hpp"

using namespace autoglide;

namespace {

harness::Scenario preset(const std::string& name) {
    return harness::parse_scenario(harness::preset_doc(name));
}

int count_char(const std::string& s, char c) {
    int n = 0;
    for (char x : s)
        if (x == c) ++n;
    return n;
}

}  // namespace

TEST_CASE("format_double text round-trips to the same bits") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto roundtrip = [](double v) {
        const std::string text = harness::format_double(v);
        return std::strtod(text.c_str(), nullptr) == v;
    };
    for (int i = 0; i < 10000; ++i) {
        CHECK(roundtrip(u(rng) * 1e-3));
        CHECK(roundtrip(u(rng) * 1e6));
    }
    CHECK(roundtrip(1.0 / 3.0));
    CHECK(roundtrip(1e-300));
    CHECK(roundtrip(-1e300));
    CHECK(harness::format_double(0.0) == "0");
    CHECK(harness::format_double(2.0) == "2");
}

TEST_CASE("the trajectory log has a fixed column set") {
    CHECK(harness::TrajectoryLog::header() ==
          std::string("t,north,east,alt,V,psi,gamma,phi,phase,psi_des,"
                      "gamma_des,roll_cmd,pitch_cmd,w_n,w_e"));
    harness::TrajectoryLog log;
    harness::TrajectoryRow row;
    row.t = 0.25;
    row.V = 35.0;
    log.add(row);
    row.t = 0.5;
    log.add(row);
    CHECK(log.size() == 2);

    const std::string csv = log.to_csv();
    CHECK(csv.back() == '\n');
    std::istringstream lines(csv);
    std::string line;
    int n_lines = 0;
    while (std::getline(lines, line)) {
        CHECK(count_char(line, ',') == 14);
        ++n_lines;
    }
    CHECK(n_lines == 3);
    CHECK(csv.rfind("0.25,", 0) == std::string::npos);  // header first
}

TEST_CASE("a low aligned start lands straight off the approach") {
    const auto res = harness::run_scenario(preset("skip_demo"));
    const auto& s = res.summary;
    CHECK(s.landed);
    CHECK(s.landed_on_target);
    CHECK(s.selected_site == 1);
    CHECK(s.phase_sequence == "Cruise,Approach,Terminal");
    CHECK(s.detected_at > 0.0);
    CHECK(s.activated_at >= s.detected_at);
    CHECK(s.identified_model == 1);  // engine-out hypothesis
    CHECK(!s.identify_ambiguous);
    CHECK(s.min_airspeed == 35.0);  // calm air holds best-glide speed exactly
    CHECK(s.envelope_violations == 0);
    CHECK(s.min_envelope_margin > 0.0);
    CHECK(s.miss_distance < 150.0);
    CHECK(harness::exit_code_for(s) == 0);
    REQUIRE(s.report.has_value());
    CHECK(s.report->selected_site == 1);

    CHECK(res.log.size() > 1000);
    CHECK(res.log.rows().front().t == 0.0);
    CHECK(res.log.rows().back().alt == 235.0);
}

TEST_CASE("identical runs produce identical logs and summaries") {
    const harness::Scenario sc = preset("skip_demo");
    const auto a = harness::run_scenario(sc);
    const auto b = harness::run_scenario(sc);
    CHECK(a.log.to_csv() == b.log.to_csv());
    // The planner wall-clock diagnostic is the only field allowed to differ.
    auto ja = harness::summary_json(a.summary);
    auto jb = harness::summary_json(b.summary);
    ja["feasibility"].erase("compute_time_s");
    jb["feasibility"].erase("compute_time_s");
    CHECK(ja.dump() == jb.dump());
}

TEST_CASE("the lossless framed link reproduces the in-process run exactly") {
    const harness::Scenario sc = preset("table1_trial1");
    const auto direct = harness::run_in_process(sc);
    const auto framed = harness::run_lockstep(sc);
    CHECK(direct.log.to_csv() == framed.log.to_csv());
    CHECK(direct.summary.touchdown_time == framed.summary.touchdown_time);
    CHECK(direct.summary.miss_distance == framed.summary.miss_distance);
    CHECK(direct.summary.selected_site == framed.summary.selected_site);
    CHECK(direct.summary.landed_on_target);
    CHECK(framed.summary.landed_on_target);
}

TEST_CASE("the landing survives ten percent frame loss") {
    auto doc = harness::preset_doc("table1_trial1");
    doc["mode"] = "sitl";
    doc["sitl"] = {{"loss_rate", 0.1}, {"link_seed", 1}};
    const harness::Scenario lossy = harness::parse_scenario(doc);

    const auto res = harness::run_scenario(lossy);  // dispatches to lockstep
    CHECK(res.summary.landed);
    CHECK(res.summary.landed_on_target);
    CHECK(res.summary.envelope_violations == 0);

    const auto clean = harness::run_in_process(preset("table1_trial1"));
    CHECK(res.log.to_csv() != clean.log.to_csv());  // loss must leave a mark
}

TEST_CASE("the plant holds, filters, and times out commands") {
    wire::LoopbackLink link;
    harness::PlantEndpoint plant(link.end_a(),
                                 preset("table1_trial1"));
    CHECK(plant.starved());
    CHECK(plant.held_command().roll_cmd == 0.0);
    CHECK(plant.held_command().pitch_cmd == 0.0);

    plant.publish();
    const auto first = link.end_b().recv();
    const auto second = link.end_b().recv();
    REQUIRE(first.has_value());
    REQUIRE(second.has_value());
    const auto state_res = wire::decode_frame(*first);
    const auto weather_res = wire::decode_frame(*second);
    REQUIRE(state_res.error == wire::DecodeError::Ok);
    REQUIRE(weather_res.error == wire::DecodeError::Ok);
    CHECK(std::holds_alternative<wire::StateMsg>(state_res.message->payload));
    CHECK(std::holds_alternative<wire::WeatherMsg>(
        weather_res.message->payload));
    CHECK(std::get<wire::StateMsg>(state_res.message->payload).t == 0.0);
    CHECK(!link.end_b().recv().has_value());

    auto send_cmd = [&](std::uint32_t seq, double roll) {
        link.end_b().send(wire::encode_frame(
            wire::CommandMsg{0.0, roll, -0.05, 0.0}, seq));
    };
    send_cmd(0, 0.1);
    CHECK(plant.poll());
    CHECK(!plant.starved());
    CHECK(plant.held_command().roll_cmd == 0.1);

    send_cmd(5, 0.2);
    CHECK(plant.poll());
    CHECK(plant.held_command().roll_cmd == 0.2);

    send_cmd(4, 0.9);  // stale
    CHECK(!plant.poll());
    CHECK(plant.held_command().roll_cmd == 0.2);
    send_cmd(5, 0.9);  // duplicate
    CHECK(!plant.poll());
    CHECK(plant.held_command().roll_cmd == 0.2);

    link.end_b().send({1, 2, 3});  // garbage
    link.end_b().send(wire::encode_frame(wire::HeartbeatMsg{0.0}, 0));
    CHECK(!plant.poll());
    CHECK(plant.held_command().roll_cmd == 0.2);

    // Silence for longer than the watchdog: back to wings level.
    for (int i = 0; i < 220; ++i) plant.step();
    CHECK(plant.starved());
    CHECK(plant.held_command().roll_cmd == 0.0);
    CHECK(plant.held_command().pitch_cmd == 0.0);

    send_cmd(6, 0.05);
    CHECK(plant.poll());
    CHECK(!plant.starved());
    CHECK(plant.held_command().roll_cmd == 0.05);
}

TEST_CASE("the autopilot endpoint replies once per fresh state") {
    wire::LoopbackLink link;
    harness::AutopilotEndpoint pilot(link.end_b(), preset("table1_trial1"));

    wire::StateMsg s;
    s.t = 0.0;
    s.north = 13163.0;
    s.east = -7164.9;
    s.alt = 3000.0;
    s.V = 35.0;
    s.psi = deg2rad(78.5);
    s.theta = 0.07;
    s.rpm = 2400.0;

    CHECK(!pilot.poll());  // nothing waiting

    wire::FrameEncoder plant_enc;
    link.end_a().send(plant_enc.encode(s));
    CHECK(pilot.poll());
    const auto reply = link.end_a().recv();
    REQUIRE(reply.has_value());
    const auto res = wire::decode_frame(*reply);
    REQUIRE(res.error == wire::DecodeError::Ok);
    REQUIRE(std::holds_alternative<wire::CommandMsg>(res.message->payload));
    CHECK(pilot.last_command().has_value());
    CHECK(pilot.last_command()->t == 0.0);

    // Replaying the same sequence number must not trigger a second reply.
    link.end_a().send(wire::encode_frame(s, 0));
    CHECK(!pilot.poll());
    CHECK(!link.end_a().recv().has_value());

    // Weather is recorded silently.
    CHECK(!pilot.last_weather().has_value());
    link.end_a().send(plant_enc.encode(wire::WeatherMsg{0.0, 1.0, -2.0, 0.0,
                                                        0.0}));
    CHECK(!pilot.poll());
    CHECK(pilot.last_weather().has_value());
    CHECK(pilot.last_weather()->w_e == -2.0);

    s.t = 0.01;
    link.end_a().send(plant_enc.encode(s));
    CHECK(pilot.poll());
    CHECK(pilot.last_command()->t == 0.01);
}

TEST_CASE("exit codes separate planning failure from a bad landing") {
    harness::RunSummary s;
    s.landed = true;
    s.landed_on_target = true;
    s.selected_site = 1;
    planner::FeasibilityReport rep;
    rep.selected_site = 1;
    s.report = rep;
    CHECK(harness::exit_code_for(s) == 0);

    s.report->selected_site = -1;  // nothing feasible
    CHECK(harness::exit_code_for(s) == 3);

    s.report->selected_site = 1;
    s.landed_on_target = false;
    CHECK(harness::exit_code_for(s) == 4);

    s.landed_on_target = true;
    s.landed = false;
    CHECK(harness::exit_code_for(s) == 4);

    harness::RunSummary never_activated;  // engine never failed -> timeout
    CHECK(harness::exit_code_for(never_activated) == 4);
}

TEST_CASE("the summary serializes every field") {
    const auto res = harness::run_scenario(preset("skip_demo"));
    const auto j = harness::summary_json(res.summary);
    for (const char* key :
         {"landed", "landed_on_target", "touchdown_time", "miss_distance",
          "heading_error", "detected_at", "activated_at", "selected_site",
          "identified_model", "identify_ambiguous", "min_airspeed",
          "min_envelope_margin", "max_command_norm", "envelope_violations",
          "phase_sequence", "feasibility"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["landed_on_target"].get<bool>());
    CHECK(j["feasibility"]["selected_site"].get<int>() == 1);
    CHECK(j["feasibility"]["predictions"].size() == 1);
}
