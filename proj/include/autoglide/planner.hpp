// Landing-site feasibility: forward-simulate the closed loop to each
// candidate in calm air and pick the quickest site that checks out.
#pragma once

#include <string>
#include <vector>

#include "autoglide/airframe.hpp"
#include "autoglide/control.hpp"
#include "autoglide/envelope.hpp"
#include "autoglide/guidance.hpp"

namespace autoglide::planner {

struct FeasibilityConfig {
    double landing_tolerance = 150.0;        // m from the threshold
    double heading_tolerance = deg2rad(30.0);  // |touchdown - runway| bound
    double horizon = 1800.0;                 // s before giving up
    double dt = 0.1;                         // prediction step, s
};

void validate(const FeasibilityConfig& cfg);

enum class Verdict {
    Feasible,
    GroundShortfall,      // touched down too far out, or pre-screen failed
    HeadingError,         // reached the site off the runway course
    EnvelopeViolation,
    Timeout,
    Numerical,            // non-finite state during prediction
};

const char* verdict_name(Verdict v);

struct TrajectoryPoint {
    double t = 0.0;
    double north = 0.0;
    double east = 0.0;
    double alt = 0.0;
    double psi = 0.0;
    double gamma = 0.0;
    double phi = 0.0;
    guidance::GuidancePhase phase = guidance::GuidancePhase::Cruise;
};

struct SitePrediction {
    int site_id = 0;
    Verdict verdict = Verdict::Timeout;
    double time_to_land = 0.0;       // s from prediction start to touchdown
    double miss_distance = 0.0;      // m from the threshold at ground contact
    double heading_error = 0.0;      // rad at ground contact
    std::string detail;
    std::vector<TrajectoryPoint> trajectory;
};

struct FeasibilityReport {
    std::vector<SitePrediction> predictions;  // one per site, input order
    int selected_site = -1;                   // -1: nothing feasible
    double compute_time_s = 0.0;              // wall clock, diagnostic only
};

/// Closed-loop calm-air prediction to one site. Shares the guidance and
/// control code with the online loop so the prediction and the flight
/// disagree only through wind and step size.
SitePrediction predict_trajectory(const sim::AircraftState& start,
                                  const guidance::MissionPlan& plan,
                                  const sim::GliderParams& params,
                                  const control::ControlGains& gains,
                                  const monitor::EnvelopeLimits& limits,
                                  const FeasibilityConfig& cfg,
                                  bool keep_trajectory = false);

/// Evaluate every site in order (plans built from the start position and the
/// shared mission shape) and select the feasible one with the smallest
/// predicted time, ties broken by the lower site id. Sites whose
/// straight-line glide footprint cannot reach the threshold are marked
/// GroundShortfall without running the simulation.
FeasibilityReport evaluate_sites(const sim::AircraftState& start,
                                 const std::vector<guidance::LandingSite>& sites,
                                 const guidance::MissionShape& shape,
                                 const sim::GliderParams& params,
                                 const control::ControlGains& gains,
                                 const monitor::EnvelopeLimits& limits,
                                 const FeasibilityConfig& cfg);

}  // namespace autoglide::planner
