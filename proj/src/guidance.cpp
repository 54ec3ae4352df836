// Phase state machine and the carrot-chasing heading laws.
#include "autoglide/guidance.hpp"

#include <algorithm>
#include <cmath>

#include "autoglide/errors.hpp"

namespace autoglide::guidance {

double phase_code(GuidancePhase p) { return static_cast<double>(p); }

const char* phase_name(GuidancePhase p) {
    switch (p) {
        case GuidancePhase::Cruise: return "Cruise";
        case GuidancePhase::Loiter: return "Loiter";
        case GuidancePhase::Approach: return "Approach";
        case GuidancePhase::Terminal: return "Terminal";
    }
    return "?";
}

void validate(const LandingSite& site) {
    const std::string where = "sites[" + std::to_string(site.id) + "].";
    if (!(std::isfinite(site.north) && std::isfinite(site.east) &&
          std::isfinite(site.elevation)))
        throw ValidationError(where + "position: must be finite");
    if (!(site.psi_f > -kPi - 1e-12 && site.psi_f <= kPi + 1e-12))
        throw ValidationError(where + "heading: must be normalized");
}

void validate(const MissionShape& shape) {
    auto fail = [](const char* msg) {
        throw ValidationError(std::string("mission.") + msg);
    };
    if (!(shape.loiter_radius > 0.0)) fail("loiter_radius: must be positive");
    if (!(shape.approach_alt_agl > 0.0))
        fail("approach_alt_agl: must be positive");
    if (!(shape.loiter_offset >= 0.0))
        fail("loiter_offset: must be non-negative");
    if (!(shape.lookahead > 0.0)) fail("lookahead: must be positive");
    if (!(shape.loiter_lead > 0.0 && shape.loiter_lead <= kPi / 2.0))
        fail("loiter_lead: must lie in (0, pi/2]");
    if (!(shape.approach_trigger_factor > 0.0))
        fail("approach_trigger_factor: must be positive");
    if (!(shape.loiter_descent_factor > 0.0 &&
          shape.loiter_descent_factor <= 1.0))
        fail("loiter_descent_factor: must lie in (0, 1]");
    if (!(shape.approach_gamma_steep < 0.0))
        fail("approach_gamma_steep: must be negative");
}

std::pair<double, double> approach_start(double center_north,
                                         double center_east, double R_l,
                                         double psi_f) {
    return {center_north + R_l * std::cos(psi_f - kPi),
            center_east + R_l * std::sin(psi_f - kPi)};
}

MissionPlan make_plan(const LandingSite& site, const MissionShape& shape,
                      double entry_north, double entry_east) {
    validate(site);
    validate(shape);
    MissionPlan plan;
    plan.site = site;
    plan.center_north = site.north - shape.loiter_offset * std::cos(site.psi_f);
    plan.center_east = site.east - shape.loiter_offset * std::sin(site.psi_f);
    plan.loiter_radius = shape.loiter_radius;
    plan.cutoff_alt = site.elevation + shape.approach_alt_agl;
    plan.approach_trigger = shape.approach_trigger_factor * shape.loiter_radius;
    plan.lookahead = shape.lookahead;
    plan.loiter_lead = shape.loiter_lead;
    plan.loiter_descent_factor = shape.loiter_descent_factor;
    plan.approach_gamma_steep = shape.approach_gamma_steep;
    plan.entry_north = entry_north;
    plan.entry_east = entry_east;
    auto [xu, yu] = approach_start(plan.center_north, plan.center_east,
                                   plan.loiter_radius, site.psi_f);
    plan.approach_start_north = xu;
    plan.approach_start_east = yu;
    return plan;
}

GuidancePhase phase_transition(GuidancePhase current,
                               const sim::AircraftState& s,
                               const MissionPlan& plan) {
    if (current == GuidancePhase::Terminal) return current;
    if (s.alt <= plan.site.elevation) return GuidancePhase::Terminal;
    if (current == GuidancePhase::Approach) return current;

    if (s.alt < plan.cutoff_alt) return GuidancePhase::Approach;

    if (current == GuidancePhase::Cruise) {
        const double dist = std::hypot(plan.center_north - s.north,
                                       plan.center_east - s.east);
        if (dist < plan.loiter_radius) return GuidancePhase::Loiter;
    }
    return current;
}

double carrot_heading(double wi_n, double wi_e, double wipl_n, double wipl_e,
                      double p_n, double p_e, double delta) {
    const double seg_n = wipl_n - wi_n;
    const double seg_e = wipl_e - wi_e;
    if (seg_n == 0.0 && seg_e == 0.0)
        throw GeometryError("carrot_heading: degenerate segment");
    const double theta = std::atan2(seg_e, seg_n);

    const double rel_n = p_n - wi_n;
    const double rel_e = p_e - wi_e;
    const double R_u = std::hypot(rel_n, rel_e);
    const double beta = theta - std::atan2(rel_e, rel_n);
    const double along = R_u * std::cos(beta);

    const double carrot_n = wi_n + (along + delta) * std::cos(theta);
    const double carrot_e = wi_e + (along + delta) * std::sin(theta);
    return std::atan2(carrot_e - p_e, carrot_n - p_n);
}

LoiterSolution loiter_heading(double center_n, double center_e, double R_c,
                              double lambda, double p_n, double p_e) {
    const double rel_n = p_n - center_n;
    const double rel_e = p_e - center_e;
    if (rel_n == 0.0 && rel_e == 0.0)
        throw GeometryError("loiter_heading: aircraft on the loiter center");
    const double theta_l = std::atan2(rel_e, rel_n);
    const double carrot_n = center_n + R_c * std::cos(theta_l + lambda);
    const double carrot_e = center_e + R_c * std::sin(theta_l + lambda);
    if (carrot_n == p_n && carrot_e == p_e)
        throw GeometryError("loiter_heading: carrot coincides with aircraft");
    LoiterSolution out;
    out.psi_des = std::atan2(carrot_e - p_e, carrot_n - p_n);
    out.cross_track = std::hypot(rel_n, rel_e) - R_c;
    return out;
}

FlightPathTarget desired_flight_path(GuidancePhase phase,
                                     const sim::AircraftState& s,
                                     const MissionPlan& plan,
                                     const sim::GliderParams& params,
                                     double wind_north, double wind_east) {
    FlightPathTarget out;
    switch (phase) {
        case GuidancePhase::Cruise:
            out.psi_des =
                carrot_heading(plan.entry_north, plan.entry_east,
                               plan.center_north, plan.center_east, s.north,
                               s.east, plan.lookahead);
            out.gamma_des = params.gamma_opt;
            return out;
        case GuidancePhase::Loiter: {
            const LoiterSolution sol =
                loiter_heading(plan.center_north, plan.center_east,
                               plan.loiter_radius, plan.loiter_lead, s.north,
                               s.east);
            out.psi_des = sol.psi_des;
            out.gamma_des = plan.loiter_descent_factor * params.gamma_opt;
            return out;
        }
        case GuidancePhase::Approach: {
            out.psi_des = carrot_heading(
                plan.approach_start_north, plan.approach_start_east,
                plan.site.north, plan.site.east, s.north, s.east,
                plan.lookahead);
            const double dist = std::hypot(plan.site.north - s.north,
                                           plan.site.east - s.east);
            const double slope = std::atan2(plan.site.elevation - s.alt, dist);
            // Ground speed along the final course is V*cos(gamma) + w_along,
            // so holding the ground slope takes sin(gamma - slope) =
            // (w_along / V) * sin(slope). Solved exactly, then clamped: the
            // shallow bound still binds whenever the headwind puts the
            // threshold beyond the achievable glide.
            const double w_along = wind_north * std::cos(plan.site.psi_f) +
                                   wind_east * std::sin(plan.site.psi_f);
            const double arg = std::clamp(
                w_along / std::max(s.V, 1.0) * std::sin(slope), -1.0, 1.0);
            const double gamma_air = slope + std::asin(arg);
            out.gamma_des = std::clamp(gamma_air, plan.approach_gamma_steep,
                                       params.gamma_opt);
            return out;
        }
        case GuidancePhase::Terminal:
            break;
    }
    throw ValidationError("desired_flight_path: no target in terminal phase");
}

}  // namespace autoglide::guidance
