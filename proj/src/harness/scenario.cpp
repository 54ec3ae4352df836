// Scenario file parsing and cross-field validation.
#include "autoglide/harness/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "autoglide/errors.hpp"

namespace autoglide::harness {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ValidationError(path + ": " + what);
}

double num(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "must be finite");
    return d;
}

int integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<int>();
}

std::uint64_t u64(const json& v, const std::string& path) {
    if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0))
        fail(path, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

std::string str(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

void expect_object(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object");
}

[[noreturn]] void unknown_key(const std::string& path, const std::string& key) {
    fail(path.empty() ? key : path + "." + key, "unknown key");
}

void parse_initial(const json& j, InitialCondition& out) {
    expect_object(j, "initial");
    for (const auto& [key, v] : j.items()) {
        const std::string path = "initial." + key;
        if (key == "north") out.north = num(v, path);
        else if (key == "east") out.east = num(v, path);
        else if (key == "alt") out.alt = num(v, path);
        else if (key == "heading_deg") out.heading_deg = num(v, path);
        else unknown_key("initial", key);
    }
}

void parse_engine(const json& j, EngineConfig& out) {
    expect_object(j, "engine");
    for (const auto& [key, v] : j.items()) {
        const std::string path = "engine." + key;
        if (key == "failure_time_s") out.failure_time_s = num(v, path);
        else if (key == "rpm_normal") out.rpm_normal = num(v, path);
        else unknown_key("engine", key);
    }
}

void parse_glider(const json& j, sim::GliderParams& out) {
    expect_object(j, "glider");
    double V_opt = out.V_opt;
    double ratio = out.glide_ratio;
    double V_stall = out.V_stall;
    double tau_phi = out.tau_phi;
    double tau_gamma = out.tau_gamma;
    double trim = out.alpha_trim;
    for (const auto& [key, v] : j.items()) {
        const std::string path = "glider." + key;
        if (key == "V_opt") V_opt = num(v, path);
        else if (key == "glide_ratio") ratio = num(v, path);
        else if (key == "V_stall") V_stall = num(v, path);
        else if (key == "tau_phi") tau_phi = num(v, path);
        else if (key == "tau_gamma") tau_gamma = num(v, path);
        else if (key == "alpha_trim_deg") trim = deg2rad(num(v, path));
        else unknown_key("glider", key);
    }
    if (!(ratio > 0.0)) fail("glider.glide_ratio", "must be positive");
    out = sim::make_glider_params(V_opt, ratio);
    out.V_stall = V_stall;
    out.tau_phi = tau_phi;
    out.tau_gamma = tau_gamma;
    out.alpha_trim = trim;
}

void parse_weather(const json& j, weather::WeatherConfig& out) {
    expect_object(j, "weather");
    for (const auto& [key, v] : j.items()) {
        const std::string path = "weather." + key;
        if (key == "direction_deg") out.direction_deg = num(v, path);
        else if (key == "speed_kts") out.speed_kts = num(v, path);
        else if (key == "turbulence_pct") out.turbulence_pct = num(v, path);
        else if (key == "gust_increase_kts") out.gust_increase_kts = num(v, path);
        else if (key == "shear_pct") out.shear_pct = num(v, path);
        else unknown_key("weather", key);
    }
}

void parse_monitor(const json& j, MonitorConfig& out) {
    expect_object(j, "monitor");
    for (const auto& [key, v] : j.items()) {
        const std::string path = "monitor." + key;
        if (key == "rpm_floor") out.thresholds.rpm_floor = num(v, path);
        else if (key == "decel_limit") out.thresholds.decel_limit = num(v, path);
        else if (key == "persist_samples")
            out.thresholds.persist_samples = integer(v, path);
        else if (key == "identify_window_s") out.identify_window_s = num(v, path);
        else unknown_key("monitor", key);
    }
}

void parse_envelope(const json& j, monitor::EnvelopeLimits& out) {
    expect_object(j, "envelope");
    for (const auto& [key, v] : j.items()) {
        const std::string path = "envelope." + key;
        if (key == "V_min") out.V_min = num(v, path);
        else if (key == "V_max") out.V_max = num(v, path);
        else if (key == "theta_min_deg") out.theta_min = deg2rad(num(v, path));
        else if (key == "theta_max_deg") out.theta_max = deg2rad(num(v, path));
        else if (key == "phi_min_deg") out.phi_min = deg2rad(num(v, path));
        else if (key == "phi_max_deg") out.phi_max = deg2rad(num(v, path));
        else if (key == "p_min") out.p_min = num(v, path);
        else if (key == "p_max") out.p_max = num(v, path);
        else if (key == "q_min") out.q_min = num(v, path);
        else if (key == "q_max") out.q_max = num(v, path);
        else if (key == "r_min") out.r_min = num(v, path);
        else if (key == "r_max") out.r_max = num(v, path);
        else unknown_key("envelope", key);
    }
}

Eigen::Vector2d pair_of(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2) fail(path, "expected [a, b]");
    return {num(v[0], path + "[0]"), num(v[1], path + "[1]")};
}

void parse_gains(const json& j, control::ControlGains& out) {
    expect_object(j, "gains");
    for (const auto& [key, v] : j.items()) {
        const std::string path = "gains." + key;
        if (key == "F_z") {
            const Eigen::Vector2d d = pair_of(v, path);
            out.F_z << d(0), 0.0, 0.0, d(1);
        } else if (key == "alpha") {
            out.alpha = num(v, path);
        } else if (key == "r_max_deg") {
            const Eigen::Vector2d d = pair_of(v, path);
            out.r_max = Eigen::Vector2d(deg2rad(d(0)), deg2rad(d(1)));
        } else if (key == "ki_gamma") {
            out.ki_gamma = num(v, path);
        } else {
            unknown_key("gains", key);
        }
    }
}

void parse_mission(const json& j, guidance::MissionShape& out) {
    expect_object(j, "mission");
    for (const auto& [key, v] : j.items()) {
        const std::string path = "mission." + key;
        if (key == "loiter_radius") out.loiter_radius = num(v, path);
        else if (key == "approach_alt_agl") out.approach_alt_agl = num(v, path);
        else if (key == "loiter_offset") out.loiter_offset = num(v, path);
        else if (key == "lookahead") out.lookahead = num(v, path);
        else if (key == "loiter_lead") out.loiter_lead = num(v, path);
        else if (key == "approach_trigger_factor")
            out.approach_trigger_factor = num(v, path);
        else if (key == "loiter_descent_factor")
            out.loiter_descent_factor = num(v, path);
        else if (key == "approach_gamma_steep_deg")
            out.approach_gamma_steep = deg2rad(num(v, path));
        else unknown_key("mission", key);
    }
}

void parse_sites(const json& j, std::vector<guidance::LandingSite>& out) {
    if (!j.is_array()) fail("sites", "expected an array");
    if (j.empty()) fail("sites", "must list at least one landing site");
    out.clear();
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string base = "sites[" + std::to_string(i) + "]";
        expect_object(j[i], base);
        guidance::LandingSite site;
        bool have_id = false;
        for (const auto& [key, v] : j[i].items()) {
            const std::string path = base + "." + key;
            if (key == "id") { site.id = integer(v, path); have_id = true; }
            else if (key == "name") site.name = str(v, path);
            else if (key == "north") site.north = num(v, path);
            else if (key == "east") site.east = num(v, path);
            else if (key == "elevation") site.elevation = num(v, path);
            else if (key == "final_heading_deg")
                site.psi_f = wrap_pi(deg2rad(num(v, path)));
            else unknown_key(base, key);
        }
        if (!have_id) fail(base + ".id", "required");
        out.push_back(site);
    }
}

void parse_feasibility(const json& j, planner::FeasibilityConfig& out) {
    expect_object(j, "feasibility");
    for (const auto& [key, v] : j.items()) {
        const std::string path = "feasibility." + key;
        if (key == "landing_tolerance") out.landing_tolerance = num(v, path);
        else if (key == "heading_tolerance_deg")
            out.heading_tolerance = deg2rad(num(v, path));
        else if (key == "horizon_s") out.horizon = num(v, path);
        else if (key == "dt") out.dt = num(v, path);
        else unknown_key("feasibility", key);
    }
}

void parse_run(const json& j, RunConfig& out) {
    expect_object(j, "run");
    for (const auto& [key, v] : j.items()) {
        const std::string path = "run." + key;
        if (key == "max_time_s") out.max_time_s = num(v, path);
        else unknown_key("run", key);
    }
}

void parse_sitl(const json& j, SitlConfig& out) {
    expect_object(j, "sitl");
    for (const auto& [key, v] : j.items()) {
        const std::string path = "sitl." + key;
        if (key == "loss_rate") out.loss_rate = num(v, path);
        else if (key == "link_seed") out.link_seed = u64(v, path);
        else unknown_key("sitl", key);
    }
}

}  // namespace

void validate(const Scenario& sc) {
    sim::validate(sc.glider);
    weather::validate(sc.weather);
    monitor::validate(sc.monitor_cfg.thresholds);
    monitor::validate(sc.envelope);
    control::validate(sc.gains);
    guidance::validate(sc.mission);
    planner::validate(sc.feasibility);

    if (sc.sites.empty())
        throw ValidationError("sites: must list at least one landing site");
    std::set<int> ids;
    for (const auto& site : sc.sites) {
        guidance::validate(site);
        if (!ids.insert(site.id).second)
            throw ValidationError("sites: duplicate site id " +
                                  std::to_string(site.id));
    }

    if (!(sc.dt_plant > 0.0 && sc.dt_plant <= 0.1))
        throw ValidationError("dt_plant: must be in (0, 0.1]");
    if (!(sc.dt_predict > 0.0 && sc.dt_predict <= 0.1))
        throw ValidationError("dt_predict: must be in (0, 0.1]");
    if (!std::isfinite(sc.initial.north) || !std::isfinite(sc.initial.east) ||
        !std::isfinite(sc.initial.alt) || !std::isfinite(sc.initial.heading_deg))
        throw ValidationError("initial: all fields must be finite");
    if (!(sc.initial.alt > sc.terrain_elevation))
        throw ValidationError("initial.alt: must be above the terrain elevation");
    if (!(sc.engine.failure_time_s >= 0.0))
        throw ValidationError("engine.failure_time_s: must be >= 0");
    if (!(sc.engine.rpm_normal > sc.monitor_cfg.thresholds.rpm_floor))
        throw ValidationError(
            "engine.rpm_normal: must exceed the monitor rpm floor");
    if (!(sc.monitor_cfg.identify_window_s > 0.0))
        throw ValidationError("monitor.identify_window_s: must be positive");
    if (!(sc.run.max_time_s > 0.0))
        throw ValidationError("run.max_time_s: must be positive");
    if (!(sc.sitl.loss_rate >= 0.0 && sc.sitl.loss_rate < 1.0))
        throw ValidationError("sitl.loss_rate: must be in [0, 1)");
    if (!std::isfinite(sc.terrain_elevation))
        throw ValidationError("terrain_elevation: must be finite");
}

Scenario parse_scenario(const nlohmann::json& doc) {
    expect_object(doc, "scenario");
    if (!doc.contains("initial") || !doc.contains("sites")) {
        std::string missing;
        if (!doc.contains("initial")) missing += "initial";
        if (!doc.contains("sites")) missing += missing.empty() ? "sites" : ", sites";
        throw ValidationError("missing required blocks: " + missing);
    }

    Scenario sc;
    bool have_terrain = false;
    for (const auto& [key, v] : doc.items()) {
        if (key == "mode") {
            const std::string m = str(v, "mode");
            if (m == "in-process") sc.mode = RunMode::InProcess;
            else if (m == "sitl") sc.mode = RunMode::Sitl;
            else fail("mode", "expected \"in-process\" or \"sitl\"");
        } else if (key == "seed") {
            sc.seed = u64(v, "seed");
        } else if (key == "dt_plant") {
            sc.dt_plant = num(v, "dt_plant");
        } else if (key == "dt_predict") {
            sc.dt_predict = num(v, "dt_predict");
        } else if (key == "initial") {
            parse_initial(v, sc.initial);
        } else if (key == "engine") {
            parse_engine(v, sc.engine);
        } else if (key == "glider") {
            parse_glider(v, sc.glider);
        } else if (key == "weather") {
            parse_weather(v, sc.weather);
        } else if (key == "monitor") {
            parse_monitor(v, sc.monitor_cfg);
        } else if (key == "envelope") {
            parse_envelope(v, sc.envelope);
        } else if (key == "gains") {
            parse_gains(v, sc.gains);
        } else if (key == "mission") {
            parse_mission(v, sc.mission);
        } else if (key == "sites") {
            parse_sites(v, sc.sites);
        } else if (key == "feasibility") {
            parse_feasibility(v, sc.feasibility);
        } else if (key == "run") {
            parse_run(v, sc.run);
        } else if (key == "sitl") {
            parse_sitl(v, sc.sitl);
        } else if (key == "terrain_elevation") {
            sc.terrain_elevation = num(v, "terrain_elevation");
            have_terrain = true;
        } else {
            unknown_key("", key);
        }
    }

    if (!have_terrain) {
        double lowest = sc.sites.front().elevation;
        for (const auto& s : sc.sites) lowest = std::min(lowest, s.elevation);
        sc.terrain_elevation = lowest;
    }

    validate(sc);
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open scenario file '" + path + "'");
    json doc;
    try {
        doc = json::parse(f);
    } catch (const json::parse_error& e) {
        throw ValidationError("scenario file '" + path + "': " + e.what());
    }
    return parse_scenario(doc);
}

}  // namespace autoglide::harness
