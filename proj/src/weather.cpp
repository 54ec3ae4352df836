// Deterministic wind synthesis: steady layer + shear, scheduled 1-cosine
// gusts, and Gauss-Markov turbulence, all driven by one seeded stream.
#include "autoglide/weather.hpp"

#include <cmath>

#include "autoglide/errors.hpp"

namespace autoglide::weather {

std::uint64_t Rng::next_u64() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_normal() {
    if (has_spare) {
        has_spare = false;
        return spare;
    }
    double u1 = 0.0;
    do {
        u1 = next_double();
    } while (u1 <= 0.0);
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * kPi * u2;
    spare = radius * std::sin(angle);
    has_spare = true;
    return radius * std::cos(angle);
}

double Rng::next_exponential(double mean) {
    double u = 0.0;
    do {
        u = next_double();
    } while (u <= 0.0);
    return -mean * std::log(u);
}

void validate(const WeatherConfig& cfg) {
    auto fail = [](const char* msg) {
        throw ValidationError(std::string("weather.") + msg);
    };
    if (!(cfg.direction_deg >= 0.0 && cfg.direction_deg < 360.0))
        fail("direction_deg: must lie in [0, 360)");
    if (!(cfg.speed_kts >= 0.0)) fail("speed_kts: must be non-negative");
    if (!(cfg.turbulence_pct >= 0.0 && cfg.turbulence_pct <= 100.0))
        fail("turbulence_pct: must lie in [0, 100]");
    if (!(cfg.gust_increase_kts >= 0.0))
        fail("gust_increase_kts: must be non-negative");
    if (!(cfg.shear_pct >= 0.0)) fail("shear_pct: must be non-negative");
}

WindStream make_stream(std::uint64_t seed) {
    WindStream s;
    s.rng = Rng(seed);
    return s;
}

namespace {

struct SteadyParts {
    double toward_n = 0.0;
    double toward_e = 0.0;
    double magnitude = 0.0;  // shear applied
};

SteadyParts steady_parts(const WeatherConfig& cfg, double alt) {
    SteadyParts out;
    const double toward = deg2rad(cfg.direction_deg + 180.0);
    out.toward_n = std::cos(toward);
    out.toward_e = std::sin(toward);
    double mag = cfg.speed_kts * kKnotsToMps;
    if (cfg.shear_pct > 0.0) {
        const double ref = std::max(alt, 1.0) / kShearRefAltitude;
        mag *= std::pow(ref, 0.05 * cfg.shear_pct);
    }
    out.magnitude = mag;
    return out;
}

void advance_states(double t, WindStream& s) {
    if (!s.initialized) {
        // Stationary start: unit-variance draws, one per channel.
        s.gm_n = s.rng.next_normal();
        s.gm_e = s.rng.next_normal();
        s.gm_up = s.rng.next_normal();
        s.gm_v = s.rng.next_normal();
        s.gust_start = t + s.rng.next_exponential(kGustMeanGap);
        s.gust_end = s.gust_start + kGustDuration;
        s.last_t = t;
        s.initialized = true;
        return;
    }
    if (t <= s.last_t) return;  // repeated query: no new randomness
    const double dt = t - s.last_t;
    const double decay = std::exp(-dt / kTurbCorrelation);
    const double drive = std::sqrt(std::max(0.0, 1.0 - decay * decay));
    s.gm_n = decay * s.gm_n + drive * s.rng.next_normal();
    s.gm_e = decay * s.gm_e + drive * s.rng.next_normal();
    s.gm_up = decay * s.gm_up + drive * s.rng.next_normal();
    s.gm_v = decay * s.gm_v + drive * s.rng.next_normal();
    while (t >= s.gust_end) {
        s.gust_start = s.gust_end + s.rng.next_exponential(kGustMeanGap);
        s.gust_end = s.gust_start + kGustDuration;
    }
    s.last_t = t;
}

}  // namespace

WindSample steady_wind(const WeatherConfig& cfg, double alt) {
    const SteadyParts sp = steady_parts(cfg, alt);
    WindSample w;
    w.w_n = sp.magnitude * sp.toward_n;
    w.w_e = sp.magnitude * sp.toward_e;
    return w;
}

WindSample sample(const WeatherConfig& cfg, double alt, double t,
                  WindStream& stream) {
    advance_states(t, stream);

    const SteadyParts sp = steady_parts(cfg, alt);
    double along = sp.magnitude;

    if (cfg.gust_increase_kts > 0.0 && t >= stream.gust_start &&
        t < stream.gust_end) {
        const double phase = (t - stream.gust_start) / kGustDuration;
        const double shape = 0.5 * (1.0 - std::cos(2.0 * kPi * phase));
        along += cfg.gust_increase_kts * kKnotsToMps * shape;
    }

    const double sigma = 0.05 * cfg.turbulence_pct;
    WindSample w;
    w.w_n = along * sp.toward_n + sigma * stream.gm_n;
    w.w_e = along * sp.toward_e + sigma * stream.gm_e;
    w.w_up = sigma * stream.gm_up;
    w.dV = sigma * stream.gm_v;

    const double cap = 0.3 * std::hypot(w.w_n, w.w_e);
    if (w.w_up > cap) w.w_up = cap;
    if (w.w_up < -cap) w.w_up = -cap;
    return w;
}

}  // namespace autoglide::weather
