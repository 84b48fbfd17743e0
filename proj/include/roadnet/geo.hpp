#ifndef ROADNET_GEO_HPP
#define ROADNET_GEO_HPP

#include <cmath>
#include <numbers>

#include "roadnet/errors.hpp"

namespace roadnet {

inline constexpr double kEarthRadiusM = 6'371'000.0;

struct GeoPoint {
    double lat_deg = 0.0;
    double lon_deg = 0.0;

    bool operator==(const GeoPoint&) const = default;
};

inline void validate_geo(const GeoPoint& p) {
    if (!std::isfinite(p.lat_deg) || !std::isfinite(p.lon_deg) ||
        p.lat_deg < -90.0 || p.lat_deg > 90.0 ||
        p.lon_deg < -180.0 || p.lon_deg > 180.0)
        throw ValidationError("coordinate out of range (lat " + std::to_string(p.lat_deg) +
                              ", lon " + std::to_string(p.lon_deg) + ")");
}

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

/// Central angle between two points on the unit sphere, via the haversine
/// formulation (numerically stable for nearby points).
inline double central_angle(const GeoPoint& a, const GeoPoint& b) {
    const double phi1 = deg_to_rad(a.lat_deg);
    const double phi2 = deg_to_rad(b.lat_deg);
    const double dphi = deg_to_rad(b.lat_deg - a.lat_deg);
    const double dlam = deg_to_rad(b.lon_deg - a.lon_deg);
    const double sp = std::sin(dphi / 2.0);
    const double sl = std::sin(dlam / 2.0);
    const double h = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
    return 2.0 * std::asin(std::min(1.0, std::sqrt(h)));
}

/// Arc length along the sphere surface, meters.
inline double great_circle_m(const GeoPoint& a, const GeoPoint& b) {
    return kEarthRadiusM * central_angle(a, b);
}

/// Straight-line distance through the sphere, meters. Always <= great circle.
inline double euclidean_chord_m(const GeoPoint& a, const GeoPoint& b) {
    return 2.0 * kEarthRadiusM * std::sin(central_angle(a, b) / 2.0);
}

} // namespace roadnet

#endif // ROADNET_GEO_HPP
