// Aircraft state and glide-performance parameters.
#pragma once

#include "autoglide/angles.hpp"

namespace autoglide::sim {

/// Kinematic aircraft state in a flat local frame: x north, y east,
/// altitude positive up, heading measured from north toward east in
/// (-pi, pi]. Flight-path angle is negative while descending.
struct AircraftState {
    double t = 0.0;      // s
    double north = 0.0;  // m
    double east = 0.0;   // m
    double alt = 0.0;    // m above datum
    double V = 0.0;      // true airspeed, m/s
    double psi = 0.0;    // heading, rad
    double gamma = 0.0;  // flight-path angle, rad
    double phi = 0.0;    // roll, rad
    double theta = 0.0;  // pitch, rad
    double p = 0.0;      // roll-rate proxy, rad/s
    double q = 0.0;      // pitch-rate proxy, rad/s
    double r = 0.0;      // turn-rate proxy, rad/s
    double rpm = 0.0;    // engine speed, rev/min
};

bool all_finite(const AircraftState& s);

/// Glide performance and first-order attitude-response constants.
/// gamma_opt is the best-glide flight-path angle and must satisfy
/// glide_ratio == -cos(gamma_opt)/sin(gamma_opt) within 1e-9.
struct GliderParams {
    double V_opt = 35.0;                      // best-glide airspeed, m/s
    double gamma_opt = -0.11065722117389563;  // atan(1/9), descending
    double glide_ratio = 9.0;                 // horizontal per vertical
    double V_stall = 30.0;                    // m/s
    double tau_phi = 0.5;                     // roll response, s
    double tau_gamma = 1.0;                   // flight-path response, s
    double alpha_trim = deg2rad(4.0);         // pitch = gamma + alpha_trim
};

/// Derive a parameter set from airspeed and glide ratio; gamma_opt is
/// computed as -atan(1/glide_ratio).
GliderParams make_glider_params(double V_opt, double glide_ratio);

/// Throws ValidationError when bounds or the ratio/angle cross-check fail.
void validate(const GliderParams& params);

}  // namespace autoglide::sim
