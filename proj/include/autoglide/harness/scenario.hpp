// Scenario files: one JSON document describing a complete run. Every block
// is optional except `initial` and `sites`; unknown keys are errors.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "autoglide/airframe.hpp"
#include "autoglide/control.hpp"
#include "autoglide/envelope.hpp"
#include "autoglide/guidance.hpp"
#include "autoglide/monitor.hpp"
#include "autoglide/planner.hpp"
#include "autoglide/weather.hpp"

namespace autoglide::harness {

enum class RunMode { InProcess, Sitl };

struct InitialCondition {
    double north = 0.0;        // m
    double east = 0.0;         // m
    double alt = 0.0;          // m above datum
    double heading_deg = 0.0;  // compass-style, converted to rad internally
};

struct EngineConfig {
    double failure_time_s = 0.25;  // rpm cuts to zero at this time
    double rpm_normal = 2400.0;
};

struct MonitorConfig {
    monitor::DetectionThresholds thresholds;
    double identify_window_s = 1.0;  // hold wings-level while gathering
};

struct RunConfig {
    double max_time_s = 2000.0;  // hard stop for the online run
};

struct SitlConfig {
    double loss_rate = 0.0;      // i.i.d. drop probability per frame
    std::uint64_t link_seed = 1;
};

struct Scenario {
    RunMode mode = RunMode::InProcess;
    std::uint64_t seed = 0;
    double dt_plant = 0.01;
    double dt_predict = 0.1;
    InitialCondition initial;
    EngineConfig engine;
    sim::GliderParams glider;
    weather::WeatherConfig weather;
    MonitorConfig monitor_cfg;
    monitor::EnvelopeLimits envelope;
    control::ControlGains gains;
    guidance::MissionShape mission;
    std::vector<guidance::LandingSite> sites;
    planner::FeasibilityConfig feasibility;
    RunConfig run;
    SitlConfig sitl;
    double terrain_elevation = 0.0;  // defaults to the lowest site elevation
};

void validate(const Scenario& sc);

/// Parse and validate. Throws ValidationError with a dotted field path on
/// any unknown key, type mismatch, or range violation.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

}  // namespace autoglide::harness
