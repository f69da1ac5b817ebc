#pragma once

#include <cmath>
#include <numbers>

namespace ringdesign {

inline constexpr double pi = std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / pi; }

/// Power ratio in dB to linear: 10^(dB/10).
inline double db_to_ratio(double db) { return std::pow(10.0, db / 10.0); }
inline double ratio_to_db(double ratio) { return 10.0 * std::log10(ratio); }

/// Wraps an angle in degrees into (-180, 180].
inline double wrap_deg(double deg) {
    double w = std::fmod(deg, 360.0);
    if (w <= -180.0) w += 360.0;
    if (w > 180.0) w -= 360.0;
    return w;
}

}  // namespace ringdesign
