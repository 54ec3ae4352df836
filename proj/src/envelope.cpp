// Envelope validation and the strict-inequality containment check.
#include "autoglide/envelope.hpp"

#include <algorithm>
#include <cmath>

#include "autoglide/errors.hpp"

namespace autoglide::monitor {

namespace {

struct Bound {
    const char* name;
    double value;
    double lo;
    double hi;
};

template <typename Fn>
void for_each_bound(const sim::AircraftState& s, const EnvelopeLimits& l,
                    Fn&& fn) {
    fn(Bound{"V", s.V, l.V_min, l.V_max});
    fn(Bound{"theta", s.theta, l.theta_min, l.theta_max});
    fn(Bound{"phi", s.phi, l.phi_min, l.phi_max});
    fn(Bound{"p", s.p, l.p_min, l.p_max});
    fn(Bound{"q", s.q, l.q_min, l.q_max});
    fn(Bound{"r", s.r, l.r_min, l.r_max});
}

}  // namespace

void validate(const EnvelopeLimits& l) {
    auto check = [](const char* name, double lo, double hi) {
        if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi))
            throw ValidationError(std::string("envelope.") + name +
                                  ": min must be below max");
    };
    check("V", l.V_min, l.V_max);
    check("theta", l.theta_min, l.theta_max);
    check("phi", l.phi_min, l.phi_max);
    check("p", l.p_min, l.p_max);
    check("q", l.q_min, l.q_max);
    check("r", l.r_min, l.r_max);
}

std::vector<EnvelopeViolation> check_envelope(const sim::AircraftState& s,
                                              const EnvelopeLimits& limits) {
    std::vector<EnvelopeViolation> out;
    for_each_bound(s, limits, [&](const Bound& b) {
        if (!(b.value > b.lo))
            out.push_back({b.name, b.value, b.lo, b.lo - b.value});
        else if (!(b.value < b.hi))
            out.push_back({b.name, b.value, b.hi, b.value - b.hi});
    });
    return out;
}

double envelope_margin(const sim::AircraftState& s,
                       const EnvelopeLimits& limits) {
    double margin = std::numeric_limits<double>::infinity();
    for_each_bound(s, limits, [&](const Bound& b) {
        margin = std::min(margin, std::min(b.value - b.lo, b.hi - b.value));
    });
    return margin;
}

}  // namespace autoglide::monitor
