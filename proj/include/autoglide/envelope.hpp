// Flight-envelope limits and the strict-inequality envelope check.
#pragma once

#include <string>
#include <vector>

#include "autoglide/airframe.hpp"
#include "autoglide/angles.hpp"

namespace autoglide::monitor {

/// Open-interval bounds on airspeed, attitude, and rate proxies.
/// A state is inside the envelope only when every variable is strictly
/// between its bounds.
struct EnvelopeLimits {
    double V_min = 30.0;
    double V_max = 60.0;
    double theta_min = deg2rad(-20.0);
    double theta_max = deg2rad(20.0);
    double phi_min = deg2rad(-30.0);
    double phi_max = deg2rad(30.0);
    double p_min = -3.0;
    double p_max = 3.0;
    double q_min = -1.5;
    double q_max = 1.5;
    double r_min = -1.0;
    double r_max = 1.0;
};

void validate(const EnvelopeLimits& limits);

/// One violated bound: value landed on or past `bound`; margin is how far
/// past (>= 0, zero when sitting exactly on the bound).
struct EnvelopeViolation {
    std::string variable;
    double value = 0.0;
    double bound = 0.0;
    double margin = 0.0;
};

/// Empty result iff every bound holds strictly.
std::vector<EnvelopeViolation> check_envelope(const sim::AircraftState& s,
                                              const EnvelopeLimits& limits);

/// Smallest distance from any variable to its nearest bound; positive inside
/// the envelope, negative or zero once any bound is reached.
double envelope_margin(const sim::AircraftState& s, const EnvelopeLimits& limits);

}  // namespace autoglide::monitor
