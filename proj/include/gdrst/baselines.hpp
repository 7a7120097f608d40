#pragma once

#include "gdrst/grid_index.hpp"
#include "gdrst/poi_catalog.hpp"
#include "gdrst/query.hpp"
#include "gdrst/road_network.hpp"
#include "gdrst/skyline.hpp"

namespace gdrst {

/**
 * Brute-force reference answer: no grid index, no caching, no early
 * termination. The nearest vertex comes from a linear scan, the sector test
 * is evaluated per candidate, and every travel-time dimension is read off a
 * full single-source Dijkstra run from the candidate's node. Ground truth
 * for every equivalence test.
 */
SkylineResult oracle_gdrst(const RoadNetwork& net, const PoiCatalog& cat, const SkylineQuery& q);

struct BbsOptions {
    // Speed bound for distance-based lower bounds (meters/second). Must be
    // at least the fastest edge in the dataset for the bounds to stay
    // admissible; <= 0 means use the network's observed maximum.
    double v_max_mps = 0.0;
};

/**
 * Distance-based best-first branch and bound over grid cells: entries are
 * keyed by the sum of haversine/v_max lower bounds, pruned when dominated
 * by a confirmed skyline member, and refined to exact travel times when a
 * POI is expanded. Returns the same member set as oracle_gdrst while
 * recording its own expansion count for comparison.
 */
SkylineResult bbs_baseline(const RoadNetwork& net, const PoiCatalog& cat, const GridIndex& idx,
                           const SkylineQuery& q, const BbsOptions& opts = {});

}  // namespace gdrst
