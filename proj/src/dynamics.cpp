// RK4 point-mass glider integration with interpolated touchdown.
#include "autoglide/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "autoglide/errors.hpp"

namespace autoglide::sim {

namespace {

// The integrated variables; V is algebraic and everything else is output.
struct Core {
    double north, east, alt, psi, phi, gamma;
};

struct Deriv {
    double north, east, alt, psi, phi, gamma;
};

Deriv derivative(const Core& c, double V, double gamma_tgt,
                 const control::AttitudeCommand& cmd,
                 const weather::WindSample& wind, const GliderParams& p) {
    Deriv d;
    const double cg = std::cos(c.gamma);
    d.north = V * cg * std::cos(c.psi) + wind.w_n;
    d.east = V * cg * std::sin(c.psi) + wind.w_e;
    d.alt = V * std::sin(c.gamma) / std::cos(c.phi) + wind.w_up;
    d.psi = (kGravity / V) * std::tan(c.phi);
    d.phi = (cmd.roll_cmd - c.phi) / p.tau_phi;
    d.gamma = (gamma_tgt - c.gamma) / p.tau_gamma;
    return d;
}

Core axpy(const Core& c, const Deriv& d, double h) {
    return {c.north + h * d.north, c.east + h * d.east, c.alt + h * d.alt,
            c.psi + h * d.psi,     c.phi + h * d.phi,   c.gamma + h * d.gamma};
}

Core rk4(const Core& c0, double V, double gamma_tgt,
         const control::AttitudeCommand& cmd, const weather::WindSample& wind,
         const GliderParams& p, double h) {
    const Deriv k1 = derivative(c0, V, gamma_tgt, cmd, wind, p);
    const Deriv k2 = derivative(axpy(c0, k1, h / 2.0), V, gamma_tgt, cmd, wind, p);
    const Deriv k3 = derivative(axpy(c0, k2, h / 2.0), V, gamma_tgt, cmd, wind, p);
    const Deriv k4 = derivative(axpy(c0, k3, h), V, gamma_tgt, cmd, wind, p);
    Core c1;
    c1.north = c0.north + h / 6.0 * (k1.north + 2.0 * k2.north + 2.0 * k3.north + k4.north);
    c1.east = c0.east + h / 6.0 * (k1.east + 2.0 * k2.east + 2.0 * k3.east + k4.east);
    c1.alt = c0.alt + h / 6.0 * (k1.alt + 2.0 * k2.alt + 2.0 * k3.alt + k4.alt);
    c1.psi = c0.psi + h / 6.0 * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi);
    c1.phi = c0.phi + h / 6.0 * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi);
    c1.gamma = c0.gamma + h / 6.0 * (k1.gamma + 2.0 * k2.gamma + 2.0 * k3.gamma + k4.gamma);
    return c1;
}

AircraftState assemble(const AircraftState& s0, const Core& c, double V,
                       double elapsed, const GliderParams& p) {
    AircraftState s = s0;
    s.t = s0.t + elapsed;
    s.north = c.north;
    s.east = c.east;
    s.alt = c.alt;
    s.V = V;
    s.psi = wrap_pi(c.psi);
    s.gamma = c.gamma;
    s.phi = c.phi;
    s.theta = c.gamma + p.alpha_trim;
    s.p = elapsed > 0.0 ? (c.phi - s0.phi) / elapsed : 0.0;
    s.q = elapsed > 0.0 ? (c.gamma - s0.gamma) / elapsed : 0.0;
    s.r = (kGravity / V) * std::tan(c.phi);
    return s;
}

}  // namespace

StepResult step(const AircraftState& s, const control::AttitudeCommand& cmd,
                const weather::WindSample& wind, const GliderParams& params,
                double dt, double ground_elev) {
    if (!(dt > 0.0 && dt <= 0.1))
        throw ValidationError("step.dt: must lie in (0, 0.1]");

    const double V = params.V_opt + wind.dV;
    double gamma_tgt = params.gamma_opt + cmd.pitch_cmd;
    // A dead engine cannot command a climb: the lag target is capped level.
    if (s.rpm <= 0.0) gamma_tgt = std::min(gamma_tgt, 0.0);

    const Core c0{s.north, s.east, s.alt, s.psi, s.phi, s.gamma};
    Core c1 = rk4(c0, V, gamma_tgt, cmd, wind, params, dt);

    StepResult out;
    double elapsed = dt;
    if (s.alt <= ground_elev) {
        // Started on or under the ground: report touchdown in place.
        out.grounded = true;
        out.state = s;
        out.state.alt = ground_elev;
        if (!all_finite(out.state)) throw NonFiniteError("step: non-finite state");
        return out;
    }
    if (c1.alt <= ground_elev) {
        // Bisect the crossing time, integrating fresh from the step start
        // so the touchdown state is dynamically consistent.
        double lo = 0.0, hi = dt;
        Core at_hi = c1;
        for (int i = 0; i < 8; ++i) {
            const double mid = 0.5 * (lo + hi);
            const Core cm = rk4(c0, V, gamma_tgt, cmd, wind, params, mid);
            if (cm.alt <= ground_elev) {
                hi = mid;
                at_hi = cm;
            } else {
                lo = mid;
            }
        }
        c1 = at_hi;
        c1.alt = ground_elev;
        elapsed = hi;
        out.grounded = true;
    }

    out.state = assemble(s, c1, V, elapsed, params);
    if (!all_finite(out.state)) throw NonFiniteError("step: non-finite state");
    return out;
}

double glide_range(double alt_agl, const GliderParams& params) {
    if (!(alt_agl >= 0.0))
        throw ValidationError("glide_range.alt_agl: must be non-negative");
    return alt_agl * params.glide_ratio;
}

}  // namespace autoglide::sim
