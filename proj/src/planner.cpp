// Per-site closed-loop trajectory prediction and minimum-time selection.
#include "autoglide/planner.hpp"

#include <chrono>
#include <cmath>

#include "autoglide/dynamics.hpp"
#include "autoglide/errors.hpp"
#include "autoglide/weather.hpp"

namespace autoglide::planner {

void validate(const FeasibilityConfig& cfg) {
    auto fail = [](const char* msg) {
        throw ValidationError(std::string("feasibility.") + msg);
    };
    if (!(cfg.landing_tolerance > 0.0))
        fail("landing_tolerance: must be positive");
    if (!(cfg.heading_tolerance > 0.0 && cfg.heading_tolerance <= kPi))
        fail("heading_tolerance: must lie in (0, pi]");
    if (!(cfg.horizon > 0.0)) fail("horizon: must be positive");
    if (!(cfg.dt > 0.0 && cfg.dt <= 0.1)) fail("dt: must lie in (0, 0.1]");
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Feasible: return "Feasible";
        case Verdict::GroundShortfall: return "GroundShortfall";
        case Verdict::HeadingError: return "HeadingError";
        case Verdict::EnvelopeViolation: return "EnvelopeViolation";
        case Verdict::Timeout: return "Timeout";
        case Verdict::Numerical: return "Numerical";
    }
    return "?";
}

SitePrediction predict_trajectory(const sim::AircraftState& start,
                                  const guidance::MissionPlan& plan,
                                  const sim::GliderParams& params,
                                  const control::ControlGains& gains,
                                  const monitor::EnvelopeLimits& limits,
                                  const FeasibilityConfig& cfg,
                                  bool keep_trajectory) {
    SitePrediction pred;
    pred.site_id = plan.site.id;
    pred.verdict = Verdict::Timeout;

    sim::AircraftState s = start;
    s.rpm = 0.0;  // prediction always assumes the engine stays out
    guidance::GuidancePhase phase = guidance::GuidancePhase::Cruise;
    const weather::WindSample calm;
    control::PiState pi;

    auto record = [&](const sim::AircraftState& st) {
        if (!keep_trajectory) return;
        pred.trajectory.push_back({st.t, st.north, st.east, st.alt, st.psi,
                                   st.gamma, st.phi, phase});
    };
    record(s);

    try {
        while (s.t - start.t <= cfg.horizon) {
            phase = guidance::phase_transition(phase, s, plan);
            if (phase == guidance::GuidancePhase::Terminal) break;

            const guidance::FlightPathTarget target =
                guidance::desired_flight_path(phase, s, plan, params);
            const control::AttitudeCommand cmd = control::reference_command(
                {target.psi_des, target.gamma_des}, {s.psi, s.gamma}, gains,
                pi, cfg.dt);

            const sim::StepResult res = sim::step(s, cmd, calm, params,
                                                  cfg.dt, plan.site.elevation);
            s = res.state;
            record(s);

            const auto violations = monitor::check_envelope(s, limits);
            if (!violations.empty()) {
                pred.verdict = Verdict::EnvelopeViolation;
                pred.detail = violations.front().variable + " outside envelope";
                return pred;
            }

            if (res.grounded) {
                pred.time_to_land = s.t - start.t;
                pred.miss_distance = std::hypot(plan.site.north - s.north,
                                                plan.site.east - s.east);
                pred.heading_error =
                    std::abs(wrap_pi(s.psi - plan.site.psi_f));
                if (pred.miss_distance > cfg.landing_tolerance) {
                    pred.verdict = Verdict::GroundShortfall;
                    pred.detail = "touched down " +
                                  std::to_string(pred.miss_distance) +
                                  " m from the threshold";
                } else if (pred.heading_error > cfg.heading_tolerance) {
                    pred.verdict = Verdict::HeadingError;
                    pred.detail = "touchdown heading off the runway course";
                } else {
                    pred.verdict = Verdict::Feasible;
                }
                return pred;
            }
        }
    } catch (const NonFiniteError& e) {
        pred.verdict = Verdict::Numerical;
        pred.detail = e.what();
        return pred;
    }

    if (pred.verdict == Verdict::Timeout)
        pred.detail = "no touchdown within the prediction horizon";
    return pred;
}

FeasibilityReport evaluate_sites(const sim::AircraftState& start,
                                 const std::vector<guidance::LandingSite>& sites,
                                 const guidance::MissionShape& shape,
                                 const sim::GliderParams& params,
                                 const control::ControlGains& gains,
                                 const monitor::EnvelopeLimits& limits,
                                 const FeasibilityConfig& cfg) {
    if (sites.empty())
        throw ValidationError("evaluate_sites: empty site list");
    validate(cfg);

    const auto t0 = std::chrono::steady_clock::now();
    FeasibilityReport report;
    report.predictions.reserve(sites.size());

    for (const auto& site : sites) {
        const double dist =
            std::hypot(site.north - start.north, site.east - start.east);
        const double agl = std::max(0.0, start.alt - site.elevation);
        if (dist > sim::glide_range(agl, params)) {
            SitePrediction pred;
            pred.site_id = site.id;
            pred.verdict = Verdict::GroundShortfall;
            pred.detail = "beyond the still-air glide footprint";
            report.predictions.push_back(std::move(pred));
            continue;
        }
        const guidance::MissionPlan plan =
            guidance::make_plan(site, shape, start.north, start.east);
        report.predictions.push_back(predict_trajectory(
            start, plan, params, gains, limits, cfg, true));
    }

    double best_time = 0.0;
    for (const auto& pred : report.predictions) {
        if (pred.verdict != Verdict::Feasible) continue;
        const bool better =
            report.selected_site < 0 || pred.time_to_land < best_time ||
            (pred.time_to_land == best_time &&
             pred.site_id < report.selected_site);
        if (better) {
            report.selected_site = pred.site_id;
            best_time = pred.time_to_land;
        }
    }
    report.compute_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return report;
}

}  // namespace autoglide::planner
