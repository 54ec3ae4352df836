// Wind model: steady layer with power-law shear, 1-cosine gust pulses,
// and first-order Gauss-Markov turbulence. Deterministic for a fixed seed.
#pragma once

#include <cstdint>

#include "autoglide/angles.hpp"

namespace autoglide::weather {

/// Configuration as it appears in scenario files. Direction follows the
/// meteorological "from" convention; speeds are in knots at the 500 m
/// reference altitude.
struct WeatherConfig {
    double direction_deg = 0.0;    // wind blows FROM this compass bearing
    double speed_kts = 0.0;        // steady speed at the reference altitude
    double turbulence_pct = 0.0;   // sigma = 0.05 * pct, m/s per axis
    double gust_increase_kts = 0.0;  // peak gust amplitude over the steady wind
    double shear_pct = 0.0;        // power-law exponent = 0.05 * pct
};

void validate(const WeatherConfig& cfg);

/// Wind components in the NED-style world frame (w_up positive upward) plus
/// an airspeed perturbation.
struct WindSample {
    double w_n = 0.0;
    double w_e = 0.0;
    double w_up = 0.0;
    double dV = 0.0;
};

/// splitmix64: tiny, seedable, and easy to reproduce in other languages when
/// cross-checking logs.
struct Rng {
    std::uint64_t state = 0;

    explicit Rng(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next_u64();
    /// Uniform in [0, 1).
    double next_double();
    /// Standard normal via Box-Muller; caches the spare deviate.
    double next_normal();
    /// Exponential with the given mean.
    double next_exponential(double mean);

    bool has_spare = false;
    double spare = 0.0;
};

/// All mutable state of the wind generator. Copyable by value, so the
/// feasibility planner can fork a stream without disturbing the live one.
struct WindStream {
    Rng rng;

    // Gauss-Markov turbulence states, kept at unit variance and scaled by
    // sigma on output.
    double gm_n = 0.0;
    double gm_e = 0.0;
    double gm_up = 0.0;
    double gm_v = 0.0;

    // Gust scheduler: pulses of fixed duration separated by exponential gaps.
    double gust_start = 0.0;   // start time of the current / next pulse
    double gust_end = -1.0;    // end of the current pulse (< start: none yet)
    bool gust_active = false;

    double last_t = 0.0;
    bool initialized = false;
};

inline constexpr double kGustDuration = 5.0;      // s
inline constexpr double kGustMeanGap = 60.0;      // s between pulses
inline constexpr double kTurbCorrelation = 2.0;   // s
inline constexpr double kShearRefAltitude = 500.0;  // m

WindStream make_stream(std::uint64_t seed);

/// Advance the stream to time t and return the wind at altitude alt.
/// Calls must be non-decreasing in t; a repeated t returns the same sample
/// without consuming randomness. The vertical component is clamped to
/// 0.3 * |horizontal wind|.
WindSample sample(const WeatherConfig& cfg, double alt, double t,
                  WindStream& stream);

/// Steady wind only (shear applied, no gusts or turbulence). Used by the
/// planner's calm-prediction mode and by tests.
WindSample steady_wind(const WeatherConfig& cfg, double alt);

}  // namespace autoglide::weather
