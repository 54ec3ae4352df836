// Saturated reference-command law and the first-order attitude proxy.
#include "autoglide/control.hpp"

#include <algorithm>
#include <cmath>

#include "autoglide/errors.hpp"

namespace autoglide::control {

void validate(const ControlGains& gains) {
    if (!(gains.alpha > 0.0 && gains.alpha < 1.0))
        throw ValidationError("gains.alpha: must lie in (0, 1)");
    if (!(gains.r_max(0) > 0.0 && gains.r_max(1) > 0.0))
        throw ValidationError("gains.r_max: every bound must be positive");
    if (!gains.F_z.allFinite() || !gains.r_max.allFinite())
        throw ValidationError("gains: non-finite entry");
    if (!(gains.ki_gamma >= 0.0))
        throw ValidationError("gains.ki_gamma: must be non-negative");
}

double polytope_norm(const AttitudeCommand& cmd, const ControlGains& gains) {
    return std::max(std::abs(cmd.roll_cmd) / gains.r_max(0),
                    std::abs(cmd.pitch_cmd) / gains.r_max(1));
}

namespace {

// Shared core: raw channel values -> saturated command. Components inside
// the box pass through untouched, preserving exact linearity.
AttitudeCommand saturate(const Eigen::Vector2d& raw, const ControlGains& g) {
    const double scale = 1.0 - g.alpha;
    AttitudeCommand out;
    double* fields[2] = {&out.roll_cmd, &out.pitch_cmd};
    for (int i = 0; i < 2; ++i) {
        const double limit = scale * g.r_max(i);
        if (raw(i) > limit)
            *fields[i] = limit;
        else if (raw(i) < -limit)
            *fields[i] = -limit;
        else
            *fields[i] = raw(i);
    }
    return out;
}

Eigen::Vector2d tracking_error(const Eigen::Vector2d& z_md,
                               const Eigen::Vector2d& z_d) {
    if (!z_md.allFinite() || !z_d.allFinite())
        throw NonFiniteError("reference_command: non-finite input");
    return {wrap_pi(z_md(0) - z_d(0)), z_md(1) - z_d(1)};
}

}  // namespace

AttitudeCommand reference_command(const Eigen::Vector2d& z_md,
                                  const Eigen::Vector2d& z_d,
                                  const ControlGains& gains) {
    const Eigen::Vector2d raw = gains.F_z * tracking_error(z_md, z_d);
    return saturate(raw, gains);
}

AttitudeCommand reference_command(const Eigen::Vector2d& z_md,
                                  const Eigen::Vector2d& z_d,
                                  const ControlGains& gains, PiState& pi,
                                  double dt) {
    const Eigen::Vector2d e = tracking_error(z_md, z_d);
    Eigen::Vector2d raw = gains.F_z * e;
    // Integral acts on the flight-path channel only; the integrator freezes
    // whenever committing the new sample would saturate that channel.
    const double candidate = pi.gamma_err_int + e(1) * dt;
    const double with_integral = raw(1) + gains.ki_gamma * candidate;
    if (std::abs(with_integral) <= (1.0 - gains.alpha) * gains.r_max(1))
        pi.gamma_err_int = candidate;
    raw(1) += gains.ki_gamma * pi.gamma_err_int;
    return saturate(raw, gains);
}

std::pair<double, double> attitude_response(
    const sim::AircraftState& s, const AttitudeCommand& cmd,
    const sim::GliderParams& params, const monitor::EnvelopeLimits& limits,
    double dt) {
    double phi = s.phi + (dt / params.tau_phi) * (cmd.roll_cmd - s.phi);
    const double gamma_tgt = params.gamma_opt + cmd.pitch_cmd;
    double gamma = s.gamma + (dt / params.tau_gamma) * (gamma_tgt - s.gamma);
    phi = std::clamp(phi, limits.phi_min, limits.phi_max);
    gamma = std::clamp(gamma, limits.theta_min - params.alpha_trim,
                       limits.theta_max - params.alpha_trim);
    return {phi, gamma};
}

}  // namespace autoglide::control
