// Autopilot state machine: hold, detect, identify, plan, guide.
#include "autoglide/harness/autopilot.hpp"

#include <algorithm>

#include "autoglide/control.hpp"
#include "autoglide/weather.hpp"

namespace autoglide::harness {

namespace {

sim::AircraftState to_state(const wire::StateMsg& m) {
    sim::AircraftState s;
    s.t = m.t;
    s.north = m.north;
    s.east = m.east;
    s.alt = m.alt;
    s.V = m.V;
    s.psi = m.psi;
    s.gamma = m.gamma;
    s.phi = m.phi;
    s.theta = m.theta;
    s.p = m.p;
    s.q = m.q;
    s.r = m.r;
    s.rpm = m.rpm;
    return s;
}

double clamp_mag(double v, double limit) {
    return std::clamp(v, -limit, limit);
}

}  // namespace

LandingAutopilot::LandingAutopilot(const Scenario& sc)
    : sc_(sc), models_(monitor::default_models(sc.glider)) {}

wire::CommandMsg LandingAutopilot::on_state(const wire::StateMsg& s) {
    const sim::AircraftState st = to_state(s);
    monitor::update(monitor_state_, st, sc_.monitor_cfg.thresholds);

    if (monitor_state_.verdict.mode == monitor::Mode::Normal)
        return normal_hold(s);

    if (!plan_) {
        // Gather the identification window: the safe-mode hold keeps the
        // command input at zero while output residuals accumulate.
        id_ts_.push_back(s.t);
        id_ys_.push_back(Eigen::Vector2d(s.V, s.gamma));
        id_us_.push_back(Eigen::Vector2d::Zero());

        const double ready_at = monitor_state_.verdict.detected_at +
                                sc_.monitor_cfg.identify_window_s - 1e-9;
        if (s.t >= ready_at && !report_) activate_plan(s);
        if (!plan_) return safe_hold(s);
        // A fresh plan starts steering on this very sample.
    }

    phase_ = guidance::phase_transition(phase_, st, *plan_);
    if (phase_ == guidance::GuidancePhase::Terminal) {
        // On the ground (or about to be): wings level, glide trim.
        last_target_ = {s.psi, sc_.glider.gamma_opt};
        return wire::CommandMsg{s.t, 0.0, 0.0, guidance::phase_code(phase_)};
    }

    const auto wind = weather::steady_wind(sc_.weather, s.alt);
    const auto target = guidance::desired_flight_path(
        phase_, st, *plan_, sc_.glider, wind.w_n, wind.w_e);
    last_target_ = target;
    const auto cmd = control::reference_command(
        Eigen::Vector2d(target.psi_des, target.gamma_des),
        Eigen::Vector2d(s.psi, s.gamma), sc_.gains, pi_state_, sc_.dt_plant);
    return wire::CommandMsg{s.t, cmd.roll_cmd, cmd.pitch_cmd,
                            guidance::phase_code(phase_)};
}

wire::CommandMsg LandingAutopilot::normal_hold(const wire::StateMsg& s) {
    if (!have_initial_heading_) {
        hold_heading_ = s.psi;
        have_initial_heading_ = true;
    }
    // Level cruise: hold the initial heading and zero flight path. The plant
    // trims pitch about the best-glide slope, so holding level needs a
    // -gamma_opt feedforward on top of the feedback command.
    auto cmd = control::reference_command(Eigen::Vector2d(hold_heading_, 0.0),
                                          Eigen::Vector2d(s.psi, s.gamma),
                                          sc_.gains);
    const double pitch_limit = (1.0 - sc_.gains.alpha) * sc_.gains.r_max(1);
    cmd.pitch_cmd = clamp_mag(cmd.pitch_cmd - sc_.glider.gamma_opt,
                              pitch_limit);
    last_target_ = {hold_heading_, 0.0};
    return wire::CommandMsg{s.t, cmd.roll_cmd, cmd.pitch_cmd,
                            guidance::phase_code(phase_)};
}

wire::CommandMsg LandingAutopilot::safe_hold(const wire::StateMsg& s) {
    // Wings level at best glide while the identification window fills.
    last_target_ = {s.psi, sc_.glider.gamma_opt};
    return wire::CommandMsg{s.t, 0.0, 0.0, guidance::phase_code(phase_)};
}

void LandingAutopilot::activate_plan(const wire::StateMsg& s) {
    std::vector<std::vector<Eigen::Vector2d>> histories;
    histories.reserve(models_.size());
    for (const auto& m : models_)
        histories.push_back(monitor::output_residuals(m, id_ts_, id_ys_,
                                                      id_us_));
    const auto id = monitor::identify_model(histories);
    identified_model_ = models_[static_cast<std::size_t>(id.index)].id;
    identify_ambiguous_ = id.ambiguous;

    // An ambiguous split earns one extra window of samples before we commit.
    const double deadline = monitor_state_.verdict.detected_at +
                            2.0 * sc_.monitor_cfg.identify_window_s;
    if (id.ambiguous && s.t < deadline) return;

    const sim::AircraftState st = to_state(s);
    report_ = planner::evaluate_sites(st, sc_.sites, sc_.mission, sc_.glider,
                                      sc_.gains, sc_.envelope,
                                      sc_.feasibility);
    if (report_->selected_site < 0) return;  // keep gliding straight

    for (const auto& site : sc_.sites) {
        if (site.id == report_->selected_site) {
            plan_ = guidance::make_plan(site, sc_.mission, s.north, s.east);
            break;
        }
    }
    activated_at_ = s.t;
    phase_ = guidance::GuidancePhase::Cruise;
    pi_state_ = control::PiState{};
}

}  // namespace autoglide::harness
