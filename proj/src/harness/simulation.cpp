// Run loops and summary assembly.
#include "autoglide/harness/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "autoglide/angles.hpp"
#include "autoglide/envelope.hpp"
#include "autoglide/harness/autopilot.hpp"
#include "autoglide/harness/endpoint.hpp"
#include "autoglide/wire/transport.hpp"

namespace autoglide::harness {

namespace {

TrajectoryRow make_row(const sim::AircraftState& s,
                       const weather::WindSample& w,
                       const wire::CommandMsg& cmd,
                       const guidance::FlightPathTarget& target) {
    TrajectoryRow row;
    row.t = s.t;
    row.north = s.north;
    row.east = s.east;
    row.alt = s.alt;
    row.V = s.V;
    row.psi = s.psi;
    row.gamma = s.gamma;
    row.phi = s.phi;
    row.phase = cmd.phase;
    row.psi_des = target.psi_des;
    row.gamma_des = target.gamma_des;
    row.roll_cmd = cmd.roll_cmd;
    row.pitch_cmd = cmd.pitch_cmd;
    row.w_n = w.w_n;
    row.w_e = w.w_e;
    return row;
}

/// Per-tick bookkeeping shared by both run loops.
class SummaryTracker {
  public:
    explicit SummaryTracker(const Scenario& sc) : sc_(sc) {}

    void observe(const sim::AircraftState& s, const wire::CommandMsg& cmd,
                 guidance::GuidancePhase phase) {
        min_V_ = std::min(min_V_, s.V);
        min_margin_ = std::min(min_margin_,
                               monitor::envelope_margin(s, sc_.envelope));
        if (!monitor::check_envelope(s, sc_.envelope).empty()) ++violations_;
        const control::AttitudeCommand att{cmd.roll_cmd, cmd.pitch_cmd};
        max_norm_ = std::max(max_norm_, control::polytope_norm(att, sc_.gains));
        if (phases_.empty() || phase != last_phase_) {
            if (!phases_.empty()) phases_ += ',';
            phases_ += guidance::phase_name(phase);
            last_phase_ = phase;
        }
    }

    void finish(RunSummary& out, const LandingAutopilot& pilot, bool landed,
                const sim::AircraftState& final_state) const {
        out.landed = landed;
        out.touchdown_time = final_state.t;
        out.min_airspeed = min_V_;
        out.min_envelope_margin = min_margin_;
        out.max_command_norm = max_norm_;
        out.envelope_violations = violations_;
        out.phase_sequence = phases_;
        if (pilot.mode() == monitor::Mode::SafeMode)
            out.detected_at = pilot.detected_at();
        if (pilot.plan_active()) out.activated_at = pilot.activated_at();
        out.selected_site = pilot.selected_site();
        out.identified_model = pilot.identified_model();
        out.identify_ambiguous = pilot.identify_ambiguous();
        out.report = pilot.report();

        out.miss_distance = -1.0;
        out.heading_error = 0.0;
        out.landed_on_target = false;
        if (pilot.plan_active()) {
            const auto& site = pilot.plan()->site;
            out.miss_distance = std::hypot(final_state.north - site.north,
                                           final_state.east - site.east);
            out.heading_error =
                std::abs(wrap_pi(final_state.psi - site.psi_f));
            out.landed_on_target =
                landed &&
                out.miss_distance <= sc_.feasibility.landing_tolerance &&
                out.heading_error <= sc_.feasibility.heading_tolerance;
        }
    }

  private:
    const Scenario& sc_;
    double min_V_ = std::numeric_limits<double>::infinity();
    double min_margin_ = std::numeric_limits<double>::infinity();
    double max_norm_ = 0.0;
    int violations_ = 0;
    std::string phases_;
    guidance::GuidancePhase last_phase_ = guidance::GuidancePhase::Cruise;
};

}  // namespace

RunResult run_in_process(const Scenario& sc) {
    PlantModel plant(sc);
    LandingAutopilot pilot(sc);
    TrajectoryLog log;
    SummaryTracker tracker(sc);

    bool landed = false;
    while (true) {
        const auto w = plant.wind();
        const auto cmd = pilot.on_state(plant.state_msg());
        log.add(make_row(plant.state(), w, cmd, pilot.last_target()));
        tracker.observe(plant.state(), cmd, pilot.phase());
        if (plant.grounded()) {
            landed = true;
            break;
        }
        if (plant.state().t >= sc.run.max_time_s) break;
        plant.advance({cmd.roll_cmd, cmd.pitch_cmd});
    }

    RunResult result;
    tracker.finish(result.summary, pilot, landed, plant.state());
    result.log = std::move(log);
    return result;
}

RunResult run_lockstep(const Scenario& sc) {
    wire::LoopbackLink link(sc.sitl.loss_rate, sc.sitl.link_seed);
    PlantEndpoint plant(link.end_a(), sc);
    AutopilotEndpoint ap(link.end_b(), sc);
    TrajectoryLog log;
    SummaryTracker tracker(sc);

    bool landed = false;
    while (true) {
        plant.publish();
        ap.poll();
        plant.poll();

        // Log the plant truth against what the autopilot believes; with a
        // lossless link this is the in-process row bit for bit.
        const auto w = plant.model().wind();
        wire::CommandMsg cmd = ap.last_command().value_or(wire::CommandMsg{});
        cmd.roll_cmd = plant.held_command().roll_cmd;
        cmd.pitch_cmd = plant.held_command().pitch_cmd;
        log.add(make_row(plant.model().state(), w, cmd,
                         ap.autopilot().last_target()));
        tracker.observe(plant.model().state(), cmd, ap.autopilot().phase());

        if (plant.model().grounded()) {
            landed = true;
            break;
        }
        if (plant.model().state().t >= sc.run.max_time_s) break;
        plant.step();
    }

    RunResult result;
    tracker.finish(result.summary, ap.autopilot(), landed,
                   plant.model().state());
    result.log = std::move(log);
    return result;
}

RunResult run_scenario(const Scenario& sc) {
    return sc.mode == RunMode::Sitl ? run_lockstep(sc) : run_in_process(sc);
}

int exit_code_for(const RunSummary& summary) {
    if (summary.report && summary.report->selected_site < 0) return 3;
    if (!summary.landed || !summary.landed_on_target) return 4;
    return 0;
}

nlohmann::json report_json(const planner::FeasibilityReport& report) {
    nlohmann::json sites = nlohmann::json::array();
    for (const auto& p : report.predictions) {
        sites.push_back({{"site_id", p.site_id},
                         {"verdict", planner::verdict_name(p.verdict)},
                         {"time_to_land", p.time_to_land},
                         {"miss_distance", p.miss_distance},
                         {"heading_error", p.heading_error},
                         {"detail", p.detail}});
    }
    return {{"predictions", sites},
            {"selected_site", report.selected_site},
            {"compute_time_s", report.compute_time_s}};
}

nlohmann::json summary_json(const RunSummary& summary) {
    nlohmann::json j{{"landed", summary.landed},
                     {"landed_on_target", summary.landed_on_target},
                     {"touchdown_time", summary.touchdown_time},
                     {"miss_distance", summary.miss_distance},
                     {"heading_error", summary.heading_error},
                     {"detected_at", summary.detected_at},
                     {"activated_at", summary.activated_at},
                     {"selected_site", summary.selected_site},
                     {"identified_model", summary.identified_model},
                     {"identify_ambiguous", summary.identify_ambiguous},
                     {"min_airspeed", summary.min_airspeed},
                     {"min_envelope_margin", summary.min_envelope_margin},
                     {"max_command_norm", summary.max_command_norm},
                     {"envelope_violations", summary.envelope_violations},
                     {"phase_sequence", summary.phase_sequence}};
    if (summary.report) j["feasibility"] = report_json(*summary.report);
    return j;
}

}  // namespace autoglide::harness
