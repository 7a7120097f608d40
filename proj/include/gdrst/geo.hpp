#pragma once

#include <optional>

#include "gdrst/errors.hpp"

namespace gdrst {

// Mean Earth radius in meters.
inline constexpr double kEarthRadiusM = 6'371'000.0;

/**
 * A latitude/longitude pair in decimal degrees.
 *
 * Latitude must lie in [-90, 90]; longitude is normalized to [-180, 180)
 * at construction so that coordinate identity is well defined across the
 * antimeridian.
 */
class GeoPoint {
public:
    GeoPoint() = default;
    GeoPoint(double lat, double lon);

    double lat() const { return lat_; }
    double lon() const { return lon_; }

    bool operator==(const GeoPoint& o) const { return lat_ == o.lat_ && lon_ == o.lon_; }
    bool operator!=(const GeoPoint& o) const { return !(*this == o); }

private:
    double lat_ = 0.0;
    double lon_ = 0.0;
};

/**
 * A direction of travel: compass bearing plus the angular half-width of the
 * admissible sector. half_angle == 180 means the sector is the full circle,
 * i.e. directional pruning is disabled.
 */
struct Heading {
    double bearing = 0.0;     // degrees clockwise from north, [0, 360)
    double half_angle = 180.0;  // degrees, (0, 180]

    Heading() = default;
    Heading(double bearing_deg, double half_angle_deg);

    bool full_circle() const { return half_angle >= 180.0; }
};

// Great-circle distance in meters (Haversine, spherical Earth).
double haversine_distance(const GeoPoint& a, const GeoPoint& b);

// Forward azimuth of the great circle from a to b, degrees clockwise from
// north in [0, 360). Throws QueryError for coincident points: the bearing
// is undefined there and a silent default would corrupt sector tests.
double initial_bearing(const GeoPoint& a, const GeoPoint& b);

// Smallest angular difference between two bearings, degrees in [0, 180].
double angular_difference(double a_deg, double b_deg);

// True iff p lies inside the angular sector centered on heading.bearing with
// half-width heading.half_angle, as seen from origin. p == origin is always
// inside (its bearing is undefined but the point is trivially "ahead").
bool within_sector(const GeoPoint& origin, const Heading& heading, const GeoPoint& p);

}  // namespace gdrst
