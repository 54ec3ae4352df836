// Plant and autopilot endpoints speaking the datagram protocol, plus the
// plant-side simulation wrapper they and the in-process runner share.
#pragma once

#include <optional>

#include "autoglide/dynamics.hpp"
#include "autoglide/harness/autopilot.hpp"
#include "autoglide/harness/scenario.hpp"
#include "autoglide/weather.hpp"
#include "autoglide/wire/frame.hpp"
#include "autoglide/wire/transport.hpp"

namespace autoglide::harness {

/// Plant-side truth: aircraft state, engine schedule, and the seeded wind
/// stream. Identical call order in the in-process and SITL paths keeps the
/// two trajectories bit-identical.
class PlantModel {
  public:
    explicit PlantModel(const Scenario& sc);

    const sim::AircraftState& state() const { return state_; }
    /// Wind at the current time and altitude (same draw reused within a
    /// tick).
    weather::WindSample wind();
    wire::StateMsg state_msg();
    wire::WeatherMsg weather_msg();

    /// One dt_plant step under cmd. Returns true at touchdown.
    bool advance(const control::AttitudeCommand& cmd);
    bool grounded() const { return grounded_; }
    double ground_elevation() const { return ground_elev_; }

  private:
    Scenario sc_;
    sim::AircraftState state_;
    weather::WindStream stream_;
    double ground_elev_ = 0.0;
    bool grounded_ = false;
};

/// Command-side half of the plant process: publishes State and Weather each
/// tick, applies the freshest valid Command (zero-order hold), and falls
/// back to wings-level best glide after 2 s of command starvation.
class PlantEndpoint {
  public:
    PlantEndpoint(wire::Transport& link, const Scenario& sc);

    void publish();
    /// Drain the socket. Returns true when a fresh command was accepted.
    bool poll();
    /// Step the plant under the held command. Returns true at touchdown.
    bool step();

    PlantModel& model() { return model_; }
    const control::AttitudeCommand& held_command() const { return held_; }
    bool starved() const { return starved_; }

    static constexpr double kStarvationTimeout = 2.0;  // s

  private:
    wire::Transport& link_;
    PlantModel model_;
    wire::FrameEncoder encoder_;
    control::AttitudeCommand held_{0.0, 0.0};
    bool starved_ = true;  // no command received yet
    double last_cmd_time_ = 0.0;
    bool have_cmd_ = false;
    std::uint32_t last_cmd_seq_ = 0;
};

/// Autopilot process half: on every received State, runs the landing logic
/// and replies with a Command frame. Keeps the trajectory log rows that the
/// autopilot can see (state, targets, command, reported wind).
class AutopilotEndpoint {
  public:
    AutopilotEndpoint(wire::Transport& link, const Scenario& sc);

    /// Drain the receive queue; reply to each fresh State. Returns true
    /// when at least one reply was sent.
    bool poll();

    LandingAutopilot& autopilot() { return pilot_; }
    const std::optional<wire::WeatherMsg>& last_weather() const {
        return weather_;
    }
    const std::optional<wire::CommandMsg>& last_command() const {
        return last_cmd_;
    }

  private:
    wire::Transport& link_;
    LandingAutopilot pilot_;
    wire::FrameEncoder encoder_;
    std::optional<wire::WeatherMsg> weather_;
    std::optional<wire::CommandMsg> last_cmd_;
    std::uint32_t last_state_seq_ = 0;
    bool have_state_seq_ = false;
};

}  // namespace autoglide::harness
