#include "gdrst/geo.hpp"

#include <cmath>
#include <string>

namespace gdrst {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double deg2rad(double deg) { return deg * kPi / 180.0; }
double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Normalize longitude into [-180, 180).
double normalize_lon(double lon) {
    double x = std::fmod(lon + 180.0, 360.0);
    if (x < 0.0) x += 360.0;
    return x - 180.0;
}

}  // namespace

GeoPoint::GeoPoint(double lat, double lon) {
    if (!(lat >= -90.0 && lat <= 90.0)) {
        throw DataError("latitude out of range [-90, 90]: " + std::to_string(lat));
    }
    if (!std::isfinite(lon)) {
        throw DataError("longitude is not finite");
    }
    lat_ = lat;
    lon_ = normalize_lon(lon);
}

Heading::Heading(double bearing_deg, double half_angle_deg) {
    if (!std::isfinite(bearing_deg) || bearing_deg < 0.0 || bearing_deg >= 360.0) {
        throw DataError("bearing out of range [0, 360): " + std::to_string(bearing_deg));
    }
    if (!std::isfinite(half_angle_deg) || half_angle_deg <= 0.0 || half_angle_deg > 180.0) {
        throw DataError("half_angle out of range (0, 180]: " + std::to_string(half_angle_deg));
    }
    bearing = bearing_deg;
    half_angle = half_angle_deg;
}

double haversine_distance(const GeoPoint& a, const GeoPoint& b) {
    const double lat1 = deg2rad(a.lat());
    const double lat2 = deg2rad(b.lat());
    const double dlat = deg2rad(b.lat() - a.lat());
    const double dlon = deg2rad(b.lon() - a.lon());

    const double s1 = std::sin(dlat / 2.0);
    const double s2 = std::sin(dlon / 2.0);
    const double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;

    // asin formulation; clamp guards rounding at antipodes.
    const double root = std::sqrt(std::min(1.0, h));
    return 2.0 * kEarthRadiusM * std::asin(root);
}

double initial_bearing(const GeoPoint& a, const GeoPoint& b) {
    if (a == b) {
        throw QueryError("undefined bearing: coincident points");
    }
    const double lat1 = deg2rad(a.lat());
    const double lat2 = deg2rad(b.lat());
    const double dlon = deg2rad(b.lon() - a.lon());

    const double y = std::sin(dlon) * std::cos(lat2);
    const double x = std::cos(lat1) * std::sin(lat2) - std::sin(lat1) * std::cos(lat2) * std::cos(dlon);
    double deg = rad2deg(std::atan2(y, x));
    if (deg < 0.0) deg += 360.0;
    if (deg >= 360.0) deg -= 360.0;
    return deg;
}

double angular_difference(double a_deg, double b_deg) {
    double d = std::fmod(std::fabs(a_deg - b_deg), 360.0);
    return d > 180.0 ? 360.0 - d : d;
}

bool within_sector(const GeoPoint& origin, const Heading& heading, const GeoPoint& p) {
    if (heading.full_circle()) return true;
    if (p == origin) return true;
    const double b = initial_bearing(origin, p);
    return angular_difference(b, heading.bearing) <= heading.half_angle;
}

}  // namespace gdrst
