#pragma once

#include <cmath>

namespace phasekit {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

/// Wrap an angle to [0, 2*pi).
inline double wrap_2pi(double x) {
    double y = std::fmod(x, two_pi);
    if (y < 0.0) y += two_pi;
    return y;
}

/// Wrap an angle to (-pi, pi].
inline double wrap_pm_pi(double x) {
    double y = std::fmod(x + pi, two_pi);
    if (y <= 0.0) y += two_pi;
    return y - pi;
}

/// Distance between two angles on the circle, in [0, pi].
inline double circ_dist(double a, double b) {
    return std::fabs(wrap_pm_pi(a - b));
}

} // namespace phasekit
