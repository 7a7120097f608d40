#include "gdrst/grid_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gdrst {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kShrinkDeg = 1e-9;  // conservative margin for ring bounds

double deg2rad(double deg) { return deg * kPi / 180.0; }

// Minimum great-circle distance from p to the full parallel at latitude L.
double dist_to_parallel(const GeoPoint& p, double lat_deg) {
    return kEarthRadiusM * deg2rad(std::fabs(p.lat() - lat_deg));
}

// Minimum great-circle distance from p to the great circle through the
// poles at longitude L (both meridian halves) — a lower bound on the
// distance to any meridian segment at that longitude.
double dist_to_meridian(const GeoPoint& p, double lon_deg) {
    const double s = std::fabs(std::sin(deg2rad(p.lon() - lon_deg))) * std::cos(deg2rad(p.lat()));
    return kEarthRadiusM * std::asin(std::min(1.0, s));
}

}  // namespace

GridIndex GridIndex::build(const RoadNetwork& net, double cell_lat_deg, double cell_lon_deg) {
    if (cell_lat_deg <= 0.0 || cell_lon_deg <= 0.0) {
        throw DataError("grid cell size must be positive");
    }
    if (net.node_count() == 0) {
        throw DataError("nothing to index");
    }

    GridIndex idx;
    idx.d_lat_ = cell_lat_deg;
    idx.d_lon_ = cell_lon_deg;

    double min_lat = 90.0, min_lon = 180.0;
    for (NodeId id : net.node_ids()) {
        const GeoPoint p = net.node_location(id);
        min_lat = std::min(min_lat, p.lat());
        min_lon = std::min(min_lon, p.lon());
    }
    idx.origin_ = GeoPoint(min_lat, min_lon);

    bool first = true;
    for (NodeId id : net.node_ids()) {
        const GeoPoint p = net.node_location(id);
        const CellCoord c = idx.cell_of(p);
        idx.cells_[c].push_back(Member{id, p});
        if (first) {
            idx.min_row_ = idx.max_row_ = c.row;
            idx.min_col_ = idx.max_col_ = c.col;
            first = false;
        } else {
            idx.min_row_ = std::min(idx.min_row_, c.row);
            idx.max_row_ = std::max(idx.max_row_, c.row);
            idx.min_col_ = std::min(idx.min_col_, c.col);
            idx.max_col_ = std::max(idx.max_col_, c.col);
        }
        ++idx.node_count_;
    }

    for (auto& [coord, members] : idx.cells_) {
        std::sort(members.begin(), members.end(),
                  [](const Member& a, const Member& b) { return a.id < b.id; });
    }
    return idx;
}

CellCoord GridIndex::cell_of(const GeoPoint& p) const {
    return CellCoord{
        static_cast<std::int64_t>(std::floor((p.lat() - origin_.lat()) / d_lat_)),
        static_cast<std::int64_t>(std::floor((p.lon() - origin_.lon()) / d_lon_)),
    };
}

std::vector<NodeId> GridIndex::nodes_in_cell(const CellCoord& c) const {
    std::vector<NodeId> out;
    auto it = cells_.find(c);
    if (it == cells_.end()) return out;
    out.reserve(it->second.size());
    for (const Member& m : it->second) out.push_back(m.id);
    return out;
}

void GridIndex::scan_cell(const CellCoord& c, const GeoPoint& loc,
                          const std::optional<Heading>& heading,
                          std::optional<std::pair<double, NodeId>>& best) const {
    auto it = cells_.find(c);
    if (it == cells_.end()) return;
    for (const Member& m : it->second) {
        if (heading && !within_sector(loc, *heading, m.loc)) continue;
        const double d = haversine_distance(loc, m.loc);
        if (!best || d < best->first || (d == best->first && m.id < best->second)) {
            best = {d, m.id};
        }
    }
}

double GridIndex::ring_lower_bound_m(const GeoPoint& loc, const CellCoord& center,
                                     std::int64_t ring) const {
    // Cells in rings >= ring lie outside the geographic box covered by rings
    // < ring; the bound is the distance from loc to that box's boundary,
    // shrunk slightly so termination can never exclude the true nearest.
    const double lat_lo = origin_.lat() + static_cast<double>(center.row - (ring - 1)) * d_lat_ + kShrinkDeg;
    const double lat_hi = origin_.lat() + static_cast<double>(center.row + ring) * d_lat_ - kShrinkDeg;
    const double lon_lo = origin_.lon() + static_cast<double>(center.col - (ring - 1)) * d_lon_ + kShrinkDeg;
    const double lon_hi = origin_.lon() + static_cast<double>(center.col + ring) * d_lon_ - kShrinkDeg;

    constexpr double kInf = std::numeric_limits<double>::infinity();
    // A box edge beyond the poles or a box spanning all longitudes offers no
    // escape on that side.
    const double d_top = lat_hi >= 90.0 ? kInf : std::max(0.0, dist_to_parallel(loc, lat_hi));
    const double d_bottom = lat_lo <= -90.0 ? kInf : std::max(0.0, dist_to_parallel(loc, lat_lo));
    double d_sides = kInf;
    if (lon_hi - lon_lo < 360.0) {
        d_sides = std::min(dist_to_meridian(loc, lon_lo), dist_to_meridian(loc, lon_hi));
    }
    return std::min({d_top, d_bottom, d_sides});
}

NodeId GridIndex::nearest_node(const GeoPoint& loc, const std::optional<Heading>& heading) const {
    const CellCoord center = cell_of(loc);
    const std::int64_t max_ring = std::max(
        std::max(std::llabs(center.row - min_row_), std::llabs(max_row_ - center.row)),
        std::max(std::llabs(center.col - min_col_), std::llabs(max_col_ - center.col)));

    std::optional<std::pair<double, NodeId>> best;

    for (std::int64_t r = 0; r <= max_ring; ++r) {
        if (best && r >= 1 && best->first < ring_lower_bound_m(loc, center, r)) {
            break;  // every unexplored node is strictly farther
        }

        if (r == 0) {
            scan_cell(center, loc, heading, best);
            continue;
        }
        const std::int64_t top = center.row + r;
        const std::int64_t bottom = center.row - r;
        for (std::int64_t col = center.col - r; col <= center.col + r; ++col) {
            scan_cell(CellCoord{top, col}, loc, heading, best);
            scan_cell(CellCoord{bottom, col}, loc, heading, best);
        }
        for (std::int64_t row = bottom + 1; row <= top - 1; ++row) {
            scan_cell(CellCoord{row, center.col - r}, loc, heading, best);
            scan_cell(CellCoord{row, center.col + r}, loc, heading, best);
        }
    }

    if (!best) throw QueryError("no node in sector");
    return best->second;
}

std::set<CellCoord> GridIndex::cells_in_sector(const GeoPoint& origin, const Heading& heading) const {
    std::set<CellCoord> out;
    for (const auto& [coord, members] : cells_) {
        if (heading.full_circle()) {
            out.insert(coord);
            continue;
        }

        const double lat0 = origin_.lat() + static_cast<double>(coord.row) * d_lat_;
        const double lat1 = lat0 + d_lat_;
        const double lon0 = origin_.lon() + static_cast<double>(coord.col) * d_lon_;
        const double lon1 = lon0 + d_lon_;
        const auto clamp_lat = [](double v) { return std::min(90.0, std::max(-90.0, v)); };

        const GeoPoint probes[5] = {
            GeoPoint(clamp_lat(lat0), lon0),
            GeoPoint(clamp_lat(lat0), lon1),
            GeoPoint(clamp_lat(lat1), lon0),
            GeoPoint(clamp_lat(lat1), lon1),
            GeoPoint(clamp_lat((lat0 + lat1) / 2.0), (lon0 + lon1) / 2.0),
        };
        bool keep = false;
        for (const GeoPoint& p : probes) {
            if (within_sector(origin, heading, p)) {
                keep = true;
                break;
            }
        }
        if (!keep) {
            // Corner sampling can miss a narrow sector slicing through the
            // cell interior; fall back to the members themselves so a cell
            // holding an in-sector node is never dropped.
            for (const Member& m : members) {
                if (within_sector(origin, heading, m.loc)) {
                    keep = true;
                    break;
                }
            }
        }
        if (keep) out.insert(coord);
    }
    return out;
}

}  // namespace gdrst
