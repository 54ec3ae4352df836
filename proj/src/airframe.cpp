// Aircraft state checks and glide-parameter construction.
#include "autoglide/airframe.hpp"

#include <cmath>
#include <string>

#include "autoglide/errors.hpp"

namespace autoglide::sim {

bool all_finite(const AircraftState& s) {
    return std::isfinite(s.t) && std::isfinite(s.north) &&
           std::isfinite(s.east) && std::isfinite(s.alt) &&
           std::isfinite(s.V) && std::isfinite(s.psi) &&
           std::isfinite(s.gamma) && std::isfinite(s.phi) &&
           std::isfinite(s.theta) && std::isfinite(s.p) &&
           std::isfinite(s.q) && std::isfinite(s.r) && std::isfinite(s.rpm);
}

GliderParams make_glider_params(double V_opt, double glide_ratio) {
    GliderParams p;
    p.V_opt = V_opt;
    p.glide_ratio = glide_ratio;
    p.gamma_opt = -std::atan(1.0 / glide_ratio);
    validate(p);
    return p;
}

void validate(const GliderParams& p) {
    auto fail = [](const std::string& msg) { throw ValidationError("glider." + msg); };
    if (!(p.V_opt > 0.0) || !std::isfinite(p.V_opt)) fail("V_opt: must be positive");
    if (!(p.V_stall > 0.0)) fail("V_stall: must be positive");
    if (!(p.V_stall < p.V_opt)) fail("V_stall: must be below V_opt");
    if (!(p.gamma_opt < 0.0)) fail("gamma_opt: must be negative");
    if (!(p.glide_ratio > 0.0)) fail("glide_ratio: must be positive");
    if (!(p.tau_phi > 0.0)) fail("tau_phi: must be positive");
    if (!(p.tau_gamma > 0.0)) fail("tau_gamma: must be positive");
    if (!(p.alpha_trim >= 0.0)) fail("alpha_trim: must be non-negative");
    const double implied = -std::cos(p.gamma_opt) / std::sin(p.gamma_opt);
    if (std::abs(implied - p.glide_ratio) > 1e-9)
        fail("glide_ratio: inconsistent with gamma_opt (implied " +
             std::to_string(implied) + ")");
}

}  // namespace autoglide::sim
