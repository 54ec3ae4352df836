// Angle helpers and shared physical constants.
#pragma once

#include <cmath>
#include <numbers>

namespace autoglide {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kGravity = 9.80665;       // m/s^2
inline constexpr double kKnotsToMps = 0.514444;   // m/s per knot

/// Wrap an angle to (-pi, pi].
inline double wrap_pi(double a) {
    double r = std::fmod(a + kPi, 2.0 * kPi);
    if (r <= 0.0) r += 2.0 * kPi;
    return r - kPi;
}

inline constexpr double deg2rad(double d) { return d * kPi / 180.0; }
inline constexpr double rad2deg(double r) { return r * 180.0 / kPi; }

}  // namespace autoglide
