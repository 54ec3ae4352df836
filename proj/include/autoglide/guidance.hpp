// Three-phase landing guidance: cruise toward the loiter circle, spiral down
// to the approach altitude, then a straight final along the runway heading.
#pragma once

#include <string>

#include "autoglide/airframe.hpp"

namespace autoglide::guidance {

enum class GuidancePhase { Cruise, Loiter, Approach, Terminal };

/// Stable numeric code for logs and the wire protocol: 0, 1, 2, 3.
double phase_code(GuidancePhase p);
const char* phase_name(GuidancePhase p);

/// A candidate landing site: threshold position, field elevation, and the
/// runway heading flown on final.
struct LandingSite {
    int id = 0;
    std::string name;
    double north = 0.0;      // m
    double east = 0.0;       // m
    double elevation = 0.0;  // m above datum
    double psi_f = 0.0;      // rad
};

void validate(const LandingSite& site);

/// Tunable shape of the mission geometry, shared by every site.
///
/// Sizing constraint: the aircraft leaves the loiter circle wherever it
/// happens to cross the cutoff altitude, so approach_alt_agl must cover the
/// worst exit, i.e. the far side of the circle plus the turn onto final, at
/// the steepest best-glide slope the airframe sweep allows. Once below the
/// direct line to the threshold a glider cannot stretch, only steepen.
struct MissionShape {
    double loiter_radius = 500.0;     // R_l, m
    double approach_alt_agl = 560.0;  // z_a above field elevation, m
    double loiter_offset = 3000.0;    // loiter center short of the site, m
    double lookahead = 200.0;         // delta: carrot lead on segments, m
    double loiter_lead = 0.35;        // lambda: carrot lead on the circle, rad
    double approach_trigger_factor = 2.0;  // R = factor * R_l
    double loiter_descent_factor = 0.75;   // fraction of gamma_opt in loiter
    double approach_gamma_steep = deg2rad(-17.0);  // steepest commanded slope
};

void validate(const MissionShape& shape);

/// Everything the guidance loop needs about one site, precomputed at plan
/// time. The loiter circle sits loiter_offset meters short of the threshold
/// along the runway heading, so the final segment leaves the circle already
/// aligned with the runway.
struct MissionPlan {
    LandingSite site;
    double center_north = 0.0;  // loiter circle center (x_l, y_l)
    double center_east = 0.0;
    double loiter_radius = 0.0;      // R_l
    double cutoff_alt = 0.0;         // z_a, absolute altitude
    double approach_trigger = 0.0;   // R, m (kept for diagnostics)
    double lookahead = 0.0;          // delta
    double loiter_lead = 0.0;        // lambda
    double loiter_descent_factor = 0.0;
    double approach_gamma_steep = 0.0;
    // Cruise reference segment: from the plan origin (where the glide began)
    // to the loiter center.
    double entry_north = 0.0;
    double entry_east = 0.0;
    // Final reference segment: approach start (x_u, y_u) to the threshold.
    double approach_start_north = 0.0;
    double approach_start_east = 0.0;
};

MissionPlan make_plan(const LandingSite& site, const MissionShape& shape,
                      double entry_north, double entry_east);

/// Runway-aligned entry point on the far side of the loiter circle:
///   x_u = x_l + R_l cos(psi_f - pi),  y_u = y_l + R_l sin(psi_f - pi).
std::pair<double, double> approach_start(double center_north,
                                         double center_east, double R_l,
                                         double psi_f);

/// One-way phase progression. Skips are allowed: an aircraft already below
/// the cutoff altitude goes straight from Cruise to Approach.
GuidancePhase phase_transition(GuidancePhase current,
                               const sim::AircraftState& s,
                               const MissionPlan& plan);

/// Carrot-chasing on the segment W_i -> W_ipl: project the position onto the
/// segment direction, place the carrot `delta` meters farther along, and
/// command the heading toward it. Throws GeometryError when W_i == W_ipl.
double carrot_heading(double wi_n, double wi_e, double wipl_n, double wipl_e,
                      double p_n, double p_e, double delta);

struct LoiterSolution {
    double psi_des = 0.0;
    double cross_track = 0.0;  // d = |p - O| - R_c, logged only
};

/// Carrot-chasing on the circle about O: the carrot sits on the circle
/// `lambda` radians counter-clockwise of the aircraft's azimuth. Throws
/// GeometryError when p == O or the carrot coincides with p.
LoiterSolution loiter_heading(double center_n, double center_e, double R_c,
                              double lambda, double p_n, double p_e);

struct FlightPathTarget {
    double psi_des = 0.0;
    double gamma_des = 0.0;
};

/// Heading and flight-path targets for the active phase:
///   Cruise   heading along entry -> loiter center, gamma_opt;
///   Loiter   circle tracking, loiter_descent_factor * gamma_opt;
///   Approach heading along (x_u, y_u) -> site, slope aimed at the
///            threshold and clamped to [steepest, gamma_opt].
///
/// The approach slope is a ground-referenced line, but the controller tracks
/// an air-mass flight-path angle. wind_north/wind_east (the steady wind
/// estimate at the aircraft's altitude) convert one into the other; with a
/// zero estimate the demand degrades to the uncorrected slope, which lands
/// short of the aim point in a headwind.
FlightPathTarget desired_flight_path(GuidancePhase phase,
                                     const sim::AircraftState& s,
                                     const MissionPlan& plan,
                                     const sim::GliderParams& params,
                                     double wind_north = 0.0,
                                     double wind_east = 0.0);

}  // namespace autoglide::guidance
