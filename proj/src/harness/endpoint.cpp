// SITL endpoints and the shared plant wrapper.
#include "autoglide/harness/endpoint.hpp"

namespace autoglide::harness {

namespace {

double scheduled_rpm(const EngineConfig& engine, double t) {
    return t >= engine.failure_time_s ? 0.0 : engine.rpm_normal;
}

}  // namespace

PlantModel::PlantModel(const Scenario& sc)
    : sc_(sc),
      stream_(weather::make_stream(sc.seed)),
      ground_elev_(sc.terrain_elevation) {
    state_.t = 0.0;
    state_.north = sc.initial.north;
    state_.east = sc.initial.east;
    state_.alt = sc.initial.alt;
    state_.psi = wrap_pi(deg2rad(sc.initial.heading_deg));
    state_.gamma = 0.0;
    state_.phi = 0.0;
    state_.theta = state_.gamma + sc.glider.alpha_trim;
    state_.p = 0.0;
    state_.q = 0.0;
    state_.r = 0.0;
    state_.rpm = scheduled_rpm(sc.engine, 0.0);
    state_.V = sc.glider.V_opt + wind().dV;
}

weather::WindSample PlantModel::wind() {
    return weather::sample(sc_.weather, state_.alt, state_.t, stream_);
}

wire::StateMsg PlantModel::state_msg() {
    const auto& s = state_;
    return wire::StateMsg{s.t, s.north, s.east, s.alt,   s.V,  s.psi, s.gamma,
                          s.phi, s.theta, s.p, s.q, s.r, s.rpm};
}

wire::WeatherMsg PlantModel::weather_msg() {
    const auto w = wind();
    return wire::WeatherMsg{state_.t, w.w_n, w.w_e, w.w_up, w.dV};
}

bool PlantModel::advance(const control::AttitudeCommand& cmd) {
    if (grounded_) return true;
    const auto w = wind();
    auto result = sim::step(state_, cmd, w, sc_.glider, sc_.dt_plant,
                            ground_elev_);
    state_ = result.state;
    state_.rpm = scheduled_rpm(sc_.engine, state_.t);
    grounded_ = result.grounded;
    return grounded_;
}

PlantEndpoint::PlantEndpoint(wire::Transport& link, const Scenario& sc)
    : link_(link), model_(sc) {}

void PlantEndpoint::publish() {
    link_.send(encoder_.encode(model_.state_msg()));
    link_.send(encoder_.encode(model_.weather_msg()));
}

bool PlantEndpoint::poll() {
    bool fresh = false;
    while (auto d = link_.recv()) {
        const auto res = wire::decode_frame(*d);
        if (res.error != wire::DecodeError::Ok) continue;
        const auto* cmd = std::get_if<wire::CommandMsg>(&res.message->payload);
        if (cmd == nullptr) continue;
        if (have_cmd_ && res.message->seq <= last_cmd_seq_) continue;
        last_cmd_seq_ = res.message->seq;
        have_cmd_ = true;
        held_ = {cmd->roll_cmd, cmd->pitch_cmd};
        last_cmd_time_ = cmd->t;
        starved_ = false;
        fresh = true;
    }
    return fresh;
}

bool PlantEndpoint::step() {
    // Starvation watchdog runs on simulation time carried by the command
    // stream, so a paused peer and a dead peer look the same.
    if (!starved_ && model_.state().t - last_cmd_time_ > kStarvationTimeout) {
        starved_ = true;
        held_ = {0.0, 0.0};
    }
    return model_.advance(held_);
}

AutopilotEndpoint::AutopilotEndpoint(wire::Transport& link, const Scenario& sc)
    : link_(link), pilot_(sc) {}

bool AutopilotEndpoint::poll() {
    bool replied = false;
    while (auto d = link_.recv()) {
        const auto res = wire::decode_frame(*d);
        if (res.error != wire::DecodeError::Ok) continue;
        if (const auto* w = std::get_if<wire::WeatherMsg>(
                &res.message->payload)) {
            weather_ = *w;
            continue;
        }
        const auto* s = std::get_if<wire::StateMsg>(&res.message->payload);
        if (s == nullptr) continue;
        if (have_state_seq_ && res.message->seq <= last_state_seq_) continue;
        last_state_seq_ = res.message->seq;
        have_state_seq_ = true;
        const auto cmd = pilot_.on_state(*s);
        last_cmd_ = cmd;
        link_.send(encoder_.encode(cmd));
        replied = true;
    }
    return replied;
}

}  // namespace autoglide::harness
