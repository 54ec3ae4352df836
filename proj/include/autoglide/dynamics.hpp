// Point-mass glider kinematics with first-order attitude lags, integrated
// with RK4 and a bisection-refined touchdown.
#pragma once

#include <limits>

#include "autoglide/airframe.hpp"
#include "autoglide/control.hpp"
#include "autoglide/weather.hpp"

namespace autoglide::sim {

struct StepResult {
    AircraftState state;
    bool grounded = false;
};

/// Advance the state by dt seconds under the given attitude command and
/// frozen wind sample.
///
/// Kinematics (V is the commanded airspeed, held algebraically):
///   north' = V cos(gamma) cos(psi) + w_n
///   east'  = V cos(gamma) sin(psi) + w_e
///   alt'   = V sin(gamma) / cos(phi) + w_up
///   psi'   = (g / V) tan(phi)
///   phi'   = (roll_cmd - phi) / tau_phi
///   gamma' = (gamma_tgt - gamma) / tau_gamma
/// with gamma_tgt = gamma_opt + pitch_cmd, capped at zero while the engine
/// is out (rpm == 0) so the airframe cannot climb without power. The
/// 1/cos(phi) factor charges the extra sink of banked flight.
///
/// If the altitude crosses ground_elev within the step, the crossing is
/// refined by bisection and the returned state is the touchdown point with
/// grounded = true and alt clamped to ground_elev.
///
/// theta, p, q, r are filled in as outputs: theta = gamma + alpha_trim,
/// p and q are the per-step attitude rates, r = (g / V) tan(phi).
StepResult step(const AircraftState& s, const control::AttitudeCommand& cmd,
                const weather::WindSample& wind, const GliderParams& params,
                double dt,
                double ground_elev = -std::numeric_limits<double>::infinity());

/// Still-air straight-line footprint: glide_ratio * height above ground.
double glide_range(double alt_agl, const GliderParams& params);

}  // namespace autoglide::sim
