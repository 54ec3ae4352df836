// The autopilot side of the loop: normal-mode hold, failure detection,
// model identification, feasibility planning, and safe-mode guidance.
#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "autoglide/guidance.hpp"
#include "autoglide/harness/scenario.hpp"
#include "autoglide/monitor.hpp"
#include "autoglide/planner.hpp"
#include "autoglide/wire/frame.hpp"

namespace autoglide::harness {

/// Deterministic state machine fed one State sample per plant tick. The
/// same object drives the in-process run and the SITL autopilot endpoint,
/// so the two modes share every decision bit-for-bit.
///
/// Timeline after engine failure:
///   detection (persistence counter trips)
///     -> identification window: wings level, best-glide descent, while
///        output residuals accumulate against the stored model set
///     -> at window end: pick the model, evaluate every site, select the
///        quickest feasible one, activate the landing plan
///     -> guidance phases Cruise / Loiter / Approach / Terminal.
class LandingAutopilot {
  public:
    explicit LandingAutopilot(const Scenario& sc);

    /// Process one state sample and return the command to apply over the
    /// next plant step.
    wire::CommandMsg on_state(const wire::StateMsg& s);

    monitor::Mode mode() const { return monitor_state_.verdict.mode; }
    guidance::GuidancePhase phase() const { return phase_; }
    bool plan_active() const { return plan_.has_value(); }
    double detected_at() const { return monitor_state_.verdict.detected_at; }
    double activated_at() const { return activated_at_; }
    int selected_site() const { return report_ ? report_->selected_site : -1; }
    bool identify_ambiguous() const { return identify_ambiguous_; }
    int identified_model() const { return identified_model_; }
    const std::optional<planner::FeasibilityReport>& report() const {
        return report_;
    }
    const std::optional<guidance::MissionPlan>& plan() const { return plan_; }

    /// Targets behind the most recent command, for logging.
    guidance::FlightPathTarget last_target() const { return last_target_; }

  private:
    wire::CommandMsg normal_hold(const wire::StateMsg& s);
    wire::CommandMsg safe_hold(const wire::StateMsg& s);
    void activate_plan(const wire::StateMsg& s);

    Scenario sc_;
    std::vector<monitor::FaultModel> models_;
    monitor::MonitorState monitor_state_;

    bool have_initial_heading_ = false;
    double hold_heading_ = 0.0;

    // Identification buffers, filled between detection and activation.
    std::vector<double> id_ts_;
    std::vector<Eigen::Vector2d> id_ys_;
    std::vector<Eigen::Vector2d> id_us_;
    int identified_model_ = -1;
    bool identify_ambiguous_ = false;

    std::optional<planner::FeasibilityReport> report_;
    std::optional<guidance::MissionPlan> plan_;
    double activated_at_ = 0.0;
    guidance::GuidancePhase phase_ = guidance::GuidancePhase::Cruise;
    guidance::FlightPathTarget last_target_;
    control::PiState pi_state_;
};

}  // namespace autoglide::harness
