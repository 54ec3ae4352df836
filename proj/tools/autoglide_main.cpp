// autoglide: engine-out landing stack CLI.
//
// Subcommands:
//   sim        full closed-loop run (in-process or lockstep SITL)
//   evaluate   landing-site feasibility sweep from the initial condition
//   plant      UDP plant endpoint (pairs with `autopilot`)
//   autopilot  UDP autopilot endpoint
//   presets    list or dump the built-in scenario documents
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "autoglide/errors.hpp"
#include "autoglide/harness/endpoint.hpp"
#include "autoglide/harness/presets.hpp"
#include "autoglide/harness/scenario.hpp"
#include "autoglide/harness/simulation.hpp"
#include "autoglide/planner.hpp"
#include "autoglide/wire/transport.hpp"

namespace {

using autoglide::ValidationError;
using nlohmann::json;
namespace fs = std::filesystem;
namespace harness = autoglide::harness;

struct CommonOpts {
    std::string scenario;  // path or preset name
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::optional<double> dt_plant;
    std::optional<double> dt_predict;
    std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--scenario", opts.scenario,
                    "Scenario file path or preset name")
        ->required();
    cmd->add_option("--seed", opts.seed, "Override the scenario seed");
    cmd->add_option("--mode", opts.mode, "Override the run mode")
        ->check(CLI::IsMember({"in-process", "sitl"}));
    cmd->add_option("--dt-plant", opts.dt_plant, "Override the plant step, s");
    cmd->add_option("--dt-predict", opts.dt_predict,
                    "Override the prediction step, s");
    cmd->add_option("--out", opts.out_dir,
                    "Directory for trajectory.csv and summary.json");
}

json scenario_doc(const std::string& name_or_path) {
    if (harness::is_preset(name_or_path)) return harness::preset_doc(name_or_path);
    std::ifstream f(name_or_path, std::ios::binary);
    if (!f)
        throw ValidationError("cannot open scenario file '" + name_or_path +
                              "'");
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw ValidationError("scenario file '" + name_or_path +
                              "': " + e.what());
    }
}

harness::Scenario resolve_scenario(const CommonOpts& opts) {
    json doc = scenario_doc(opts.scenario);
    if (opts.seed) doc["seed"] = *opts.seed;
    if (opts.mode) doc["mode"] = *opts.mode;
    if (opts.dt_plant) doc["dt_plant"] = *opts.dt_plant;
    if (opts.dt_predict) doc["dt_predict"] = *opts.dt_predict;
    return harness::parse_scenario(doc);
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open '" + path.string() + "'");
    f << text;
    if (!f) throw ValidationError("failed writing '" + path.string() + "'");
}

int run_sim(const CommonOpts& opts) {
    const auto sc = resolve_scenario(opts);
    const auto result = harness::run_scenario(sc);
    const json summary = harness::summary_json(result.summary);
    if (!opts.out_dir.empty()) {
        fs::create_directories(opts.out_dir);
        result.log.write_csv((fs::path(opts.out_dir) / "trajectory.csv").string());
        write_text(fs::path(opts.out_dir) / "summary.json",
                   summary.dump(2) + "\n");
    }
    std::cout << summary.dump(2) << "\n";
    return harness::exit_code_for(result.summary);
}

int run_evaluate(const CommonOpts& opts) {
    const auto sc = resolve_scenario(opts);
    // Feasibility is judged from the configured start as an engine-out
    // glide: best-glide airspeed and slope, wings level.
    autoglide::sim::AircraftState start;
    start.t = 0.0;
    start.north = sc.initial.north;
    start.east = sc.initial.east;
    start.alt = sc.initial.alt;
    start.V = sc.glider.V_opt;
    start.psi = autoglide::wrap_pi(autoglide::deg2rad(sc.initial.heading_deg));
    start.gamma = sc.glider.gamma_opt;
    start.theta = start.gamma + sc.glider.alpha_trim;
    start.rpm = 0.0;

    auto cfg = sc.feasibility;
    cfg.dt = sc.dt_predict;
    const auto report = autoglide::planner::evaluate_sites(
        start, sc.sites, sc.mission, sc.glider, sc.gains, sc.envelope, cfg);
    const json doc = harness::report_json(report);
    if (!opts.out_dir.empty()) {
        fs::create_directories(opts.out_dir);
        write_text(fs::path(opts.out_dir) / "report.json", doc.dump(2) + "\n");
    }
    std::cout << doc.dump(2) << "\n";
    return report.selected_site >= 0 ? 0 : 3;
}

int run_plant(const CommonOpts& opts) {
    const auto sc = resolve_scenario(opts);
    autoglide::wire::UdpTransport link(autoglide::wire::host_from_env(),
                                       autoglide::wire::cmd_port_from_env(),
                                       autoglide::wire::state_port_from_env());
    harness::PlantEndpoint plant(link, sc);
    std::cerr << "plant: stepping " << sc.dt_plant << " s per tick\n";
    using clock = std::chrono::steady_clock;
    while (true) {
        plant.publish();
        // Wait briefly for the reply; the zero-order hold covers a miss.
        const auto deadline = clock::now() + std::chrono::milliseconds(1);
        while (!plant.poll() && clock::now() < deadline)
            std::this_thread::yield();
        if (plant.step()) break;
        if (plant.model().state().t >= sc.run.max_time_s) break;
    }
    plant.publish();  // final state
    const auto& s = plant.model().state();
    std::cerr << "plant: done at t=" << s.t << " alt=" << s.alt << "\n";
    return 0;
}

int run_autopilot(const CommonOpts& opts) {
    const auto sc = resolve_scenario(opts);
    autoglide::wire::UdpTransport link(autoglide::wire::host_from_env(),
                                       autoglide::wire::state_port_from_env(),
                                       autoglide::wire::cmd_port_from_env());
    harness::AutopilotEndpoint ap(link, sc);
    std::cerr << "autopilot: listening\n";
    using clock = std::chrono::steady_clock;
    auto last_heard = clock::now();
    bool heard = false;
    while (true) {
        if (ap.poll()) {
            heard = true;
            last_heard = clock::now();
            continue;  // drain eagerly while traffic is flowing
        }
        const auto quiet = clock::now() - last_heard;
        if (heard && quiet > std::chrono::seconds(5)) break;
        if (!heard && quiet > std::chrono::seconds(60)) break;
        if (quiet > std::chrono::milliseconds(100))
            std::this_thread::sleep_for(std::chrono::milliseconds(1));
        else
            std::this_thread::yield();
    }
    std::cerr << "autopilot: link quiet, exiting\n";
    return 0;
}

int run_presets(const std::string& name, const std::string& out_dir) {
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        for (const auto& n : harness::preset_names())
            write_text(fs::path(out_dir) / (n + ".json"),
                       harness::preset_doc(n).dump(2) + "\n");
        std::cout << "wrote " << harness::preset_names().size()
                  << " presets to " << out_dir << "\n";
        return 0;
    }
    if (!name.empty()) {
        std::cout << harness::preset_doc(name).dump(2) << "\n";
        return 0;
    }
    for (const auto& n : harness::preset_names()) std::cout << n << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Engine-out emergency landing stack"};
    app.require_subcommand(1);

    CommonOpts sim_opts, eval_opts, plant_opts, ap_opts;
    auto* sim_cmd = app.add_subcommand("sim", "Run the closed loop");
    add_common(sim_cmd, sim_opts);
    auto* eval_cmd =
        app.add_subcommand("evaluate", "Rank landing sites by predicted time");
    add_common(eval_cmd, eval_opts);
    auto* plant_cmd = app.add_subcommand("plant", "UDP plant endpoint");
    add_common(plant_cmd, plant_opts);
    auto* ap_cmd = app.add_subcommand("autopilot", "UDP autopilot endpoint");
    add_common(ap_cmd, ap_opts);

    std::string preset_name, preset_out;
    auto* presets_cmd =
        app.add_subcommand("presets", "List or dump built-in scenarios");
    presets_cmd->add_option("name", preset_name, "Preset to print");
    presets_cmd->add_option("--out", preset_out,
                            "Write every preset to this directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim_cmd->parsed()) return run_sim(sim_opts);
        if (eval_cmd->parsed()) return run_evaluate(eval_opts);
        if (plant_cmd->parsed()) return run_plant(plant_opts);
        if (ap_cmd->parsed()) return run_autopilot(ap_opts);
        if (presets_cmd->parsed()) return run_presets(preset_name, preset_out);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const autoglide::TransportError& e) {
        std::cerr << "transport error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
