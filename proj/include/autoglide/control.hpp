// Saturated reference-command law and the first-order attitude proxy.
#pragma once

#include <Eigen/Dense>

#include "autoglide/airframe.hpp"
#include "autoglide/envelope.hpp"

namespace autoglide::control {

/// Gains for the saturated reference law
///   r_d = (1 - alpha) * W^-1 * sat( W * F_z * e / (1 - alpha) ),
/// with W = diag(1 / r_max_i) and e = (wrapped heading error, flight-path
/// error). By construction ||W * r_d||_inf <= 1 - alpha, and the law is the
/// identity map r_d = F_z * e while the inner argument stays inside the unit
/// box.
struct ControlGains {
    Eigen::Matrix2d F_z = (Eigen::Matrix2d() << 0.8, 0.0, 0.0, 1.2).finished();
    double alpha = 0.2;
    Eigen::Vector2d r_max = Eigen::Vector2d(deg2rad(30.0), deg2rad(15.0));
    // Integral gain on the flight-path channel. Proportional feedback alone
    // leaves a static droop against the glide trim, which on final turns
    // into a touchdown miss; the integrator removes it.
    double ki_gamma = 0.5;
};

void validate(const ControlGains& gains);

/// Roll command and pitch offset from the best-glide trim, rad. The plant
/// interprets pitch_cmd as a flight-path target of gamma_opt + pitch_cmd.
struct AttitudeCommand {
    double roll_cmd = 0.0;
    double pitch_cmd = 0.0;
};

/// ||W * r_d||_inf for a command under the given gains.
double polytope_norm(const AttitudeCommand& cmd, const ControlGains& gains);

/// z_md = (psi_des, gamma_des), z_d = (psi, gamma). The heading error is
/// wrapped to (-pi, pi] before the gain is applied. Throws NonFiniteError on
/// non-finite input.
AttitudeCommand reference_command(const Eigen::Vector2d& z_md,
                                  const Eigen::Vector2d& z_d,
                                  const ControlGains& gains);

/// Integrator state for the optional flight-path integral term.
struct PiState {
    double gamma_err_int = 0.0;
};

/// Variant with the integral term: the accumulated flight-path error (scaled
/// by ki_gamma) is added to the raw pitch channel before saturation. With
/// ki_gamma == 0 this reduces exactly to reference_command. Anti-windup:
/// the integrator freezes while the pitch channel is saturated.
AttitudeCommand reference_command(const Eigen::Vector2d& z_md,
                                  const Eigen::Vector2d& z_d,
                                  const ControlGains& gains, PiState& pi,
                                  double dt);

/// One explicit-Euler step of the first-order attitude response:
///   phi   <- phi + (dt/tau_phi) * (roll_cmd - phi)
///   gamma <- gamma + (dt/tau_gamma) * (gamma_opt + pitch_cmd - gamma)
/// Outputs are clamped to the envelope (gamma through theta = gamma + trim).
/// Returns (phi, gamma).
std::pair<double, double> attitude_response(const sim::AircraftState& s,
                                            const AttitudeCommand& cmd,
                                            const sim::GliderParams& params,
                                            const monitor::EnvelopeLimits& limits,
                                            double dt);

}  // namespace autoglide::control
