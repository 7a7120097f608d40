#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "gdrst/geo.hpp"
#include "gdrst/road_network.hpp"

namespace gdrst {

struct CellCoord {
    std::int64_t row = 0;
    std::int64_t col = 0;

    bool operator==(const CellCoord& o) const { return row == o.row && col == o.col; }
    bool operator<(const CellCoord& o) const {
        return row != o.row ? row < o.row : col < o.col;
    }
};

struct CellCoordHash {
    std::size_t operator()(const CellCoord& c) const {
        std::size_t h = std::hash<std::int64_t>{}(c.row);
        h ^= std::hash<std::int64_t>{}(c.col) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

/**
 * Lat/lon grid partition of the network's nodes. The grid origin is
 * anchored at the dataset's minimum latitude/longitude so cell indices are
 * nonnegative for in-bbox points. Immutable after build; rebuild if the
 * node set changes.
 */
class GridIndex {
public:
    // cell sizes are degrees; the network must be nonempty.
    static GridIndex build(const RoadNetwork& net, double cell_lat_deg, double cell_lon_deg);

    CellCoord cell_of(const GeoPoint& p) const;

    double cell_lat_deg() const { return d_lat_; }
    double cell_lon_deg() const { return d_lon_; }
    GeoPoint origin() const { return origin_; }
    std::size_t node_count() const { return node_count_; }
    std::size_t cell_count() const { return cells_.size(); }

    // Node ids of one cell, ascending; empty when the cell holds nothing.
    std::vector<NodeId> nodes_in_cell(const CellCoord& c) const;

    /**
     * The node minimizing haversine distance to loc among nodes passing the
     * sector test (no heading, or a full-circle heading, admits every node).
     * Searches expanding square rings of cells and stops only when the best
     * candidate is provably closer than any unexplored ring; ties break to
     * the smaller node id. Throws QueryError when no node is in the sector.
     */
    NodeId nearest_node(const GeoPoint& loc, const std::optional<Heading>& heading = std::nullopt) const;

    /**
     * Every cell that may contain in-sector nodes. A cell is kept when any
     * of its four corners or its center passes the sector test, or, failing
     * that, when one of its member nodes does — so a cell containing an
     * in-sector node is never excluded, while over-inclusion is acceptable.
     */
    std::set<CellCoord> cells_in_sector(const GeoPoint& origin, const Heading& heading) const;

private:
    struct Member {
        NodeId id;
        GeoPoint loc;
    };

    double ring_lower_bound_m(const GeoPoint& loc, const CellCoord& center, std::int64_t ring) const;
    void scan_cell(const CellCoord& c, const GeoPoint& loc, const std::optional<Heading>& heading,
                   std::optional<std::pair<double, NodeId>>& best) const;

    double d_lat_ = 0.0;
    double d_lon_ = 0.0;
    GeoPoint origin_;
    std::unordered_map<CellCoord, std::vector<Member>, CellCoordHash> cells_;
    std::int64_t min_row_ = 0, max_row_ = 0, min_col_ = 0, max_col_ = 0;
    std::size_t node_count_ = 0;
};

}  // namespace gdrst
