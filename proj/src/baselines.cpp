#include "gdrst/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <tuple>
#include <unordered_set>

namespace gdrst {

namespace {

std::uint64_t now_nanos() {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// Secondary member node sets, with filters applied before any travel-time
// work. Returns false (and warns) when some preference matches nothing.
bool collect_member_nodes(const PoiCatalog& cat, const std::vector<PreferenceSpec>& secondary,
                          std::vector<std::vector<NodeId>>& member_nodes,
                          std::vector<std::string>& warnings) {
    bool all_nonempty = true;
    member_nodes.clear();
    for (const PreferenceSpec& spec : secondary) {
        std::vector<NodeId> nodes;
        for (const std::string& id : cat.filter_phase(spec)) {
            nodes.push_back(cat.get(id).snapped_node);
        }
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        if (nodes.empty()) {
            warnings.push_back(empty_spec_warning(spec));
            all_nonempty = false;
        }
        member_nodes.push_back(std::move(nodes));
    }
    return all_nonempty;
}

// Attribute objective value, negated for maximize; nullopt when absent.
std::optional<double> objective_value(const Poi& poi, const Objective& o) {
    auto it = poi.attributes.find(o.attribute);
    if (it == poi.attributes.end()) return std::nullopt;
    return o.sense == Sense::Maximize ? -it->second : it->second;
}

}  // namespace

SkylineResult oracle_gdrst(const RoadNetwork& net, const PoiCatalog& cat, const SkylineQuery& q) {
    const std::uint64_t t0 = now_nanos();
    SkylineResult result;
    result.revision = net.traffic_revision();

    // Nearest vertex by exhaustive scan over every node.
    std::optional<std::pair<double, NodeId>> best_u;
    for (NodeId id : net.node_ids()) {
        const GeoPoint p = net.node_location(id);
        if (!within_sector(q.origin, q.heading, p)) continue;
        const double d = haversine_distance(q.origin, p);
        if (!best_u || d < best_u->first || (d == best_u->first && id < best_u->second)) {
            best_u = {d, id};
        }
    }
    if (!best_u) throw QueryError("no node in sector");
    const NodeId u = best_u->second;

    std::vector<std::string> candidates;
    for (const auto& [id, poi] : cat.pois()) {
        if (!PoiCatalog::passes(poi, q.primary)) continue;
        if (!within_sector(q.origin, q.heading, poi.location)) continue;
        candidates.push_back(id);
    }

    std::vector<std::vector<NodeId>> member_nodes;
    collect_member_nodes(cat, q.secondary, member_nodes, result.warnings);

    std::vector<CostVector> vectors;
    for (const std::string& id : candidates) {
        const Poi& poi = cat.get(id);

        // One exhaustive run per candidate; every travel-time dimension is
        // read from it directly.
        TravelTimeField field = net.shortest_travel_time({poi.snapped_node});
        result.expansions += field.settled_count();

        CostVector v;
        v.owner = id;
        bool ok = true;

        auto to_u = field.seconds(u);
        if (!to_u) ok = false;
        v.dims.push_back({dim_name_origin(), ok ? static_cast<double>(*to_u) : kInf});

        for (std::size_t j = 0; j < q.secondary.size(); ++j) {
            Seconds best = 0;
            bool found = false;
            for (NodeId m : member_nodes[j]) {
                if (auto secs = field.seconds(m)) {
                    if (!found || *secs < best) {
                        best = *secs;
                        found = true;
                    }
                }
            }
            if (!found) ok = false;
            v.dims.push_back({dim_name_secondary(j, q.secondary[j]), found ? static_cast<double>(best) : kInf});
        }

        for (const Objective& o : q.objectives) {
            auto val = objective_value(poi, o);
            if (!val) ok = false;
            v.dims.push_back({dim_name_objective(o), val.value_or(kInf)});
        }

        if (ok) vectors.push_back(std::move(v));
    }

    result.members = skyline_of(vectors);
    sort_members_by_owner(result.members);
    result.cpu_nanos = now_nanos() - t0;
    return result;
}

SkylineResult bbs_baseline(const RoadNetwork& net, const PoiCatalog& cat, const GridIndex& idx,
                           const SkylineQuery& q, const BbsOptions& opts) {
    const std::uint64_t t0 = now_nanos();
    SkylineResult result;
    result.revision = net.traffic_revision();

    const NodeId u = idx.nearest_node(q.origin, q.heading);
    const GeoPoint u_loc = net.node_location(u);

    double v_max = opts.v_max_mps > 0.0 ? opts.v_max_mps : net.max_edge_speed_mps();
    // A degenerate (all zero-length) network yields v_max 0: fall back to
    // zero lower bounds, which are trivially admissible. The shave keeps
    // the bound admissible under floating-point rounding of near-collinear
    // haversine sums.
    const auto lb_seconds = [&](const GeoPoint& a, const GeoPoint& b) {
        if (v_max <= 0.0) return 0.0;
        const double lb = haversine_distance(a, b) / v_max;
        return std::max(0.0, lb * (1.0 - 1e-9) - 1e-9);
    };

    std::vector<std::vector<NodeId>> member_nodes;
    const bool specs_ok = collect_member_nodes(cat, q.secondary, member_nodes, result.warnings);

    // Candidate universe: filter + sector + costable attributes. A missing
    // objective attribute or an empty secondary preference means the POI can
    // never be costed, exactly as in the oracle.
    struct Candidate {
        const Poi* poi;
        CostVector lower_bound;
    };
    std::vector<Candidate> candidates;
    if (specs_ok) {
        for (const auto& [id, poi] : cat.pois()) {
            if (!PoiCatalog::passes(poi, q.primary)) continue;
            if (!within_sector(q.origin, q.heading, poi.location)) continue;

            const GeoPoint node_loc = net.node_location(poi.snapped_node);
            CostVector lb;
            lb.owner = id;
            lb.dims.push_back({dim_name_origin(), lb_seconds(u_loc, node_loc)});
            for (std::size_t j = 0; j < q.secondary.size(); ++j) {
                double best = kInf;
                for (NodeId m : member_nodes[j]) {
                    best = std::min(best, lb_seconds(node_loc, net.node_location(m)));
                }
                lb.dims.push_back({dim_name_secondary(j, q.secondary[j]), best});
            }
            bool ok = true;
            for (const Objective& o : q.objectives) {
                auto val = objective_value(poi, o);
                if (!val) ok = false;
                lb.dims.push_back({dim_name_objective(o), val.value_or(kInf)});
            }
            if (ok) candidates.push_back({&poi, std::move(lb)});
        }
    }

    // Group candidates by grid cell; a cell's lower bound is the
    // dimension-wise minimum over its members.
    std::map<CellCoord, std::vector<std::size_t>> by_cell;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        by_cell[idx.cell_of(net.node_location(candidates[i].poi->snapped_node))].push_back(i);
    }

    enum Kind { kExact = 0, kPoiLb = 1, kCell = 2 };
    struct Item {
        double key;
        int kind;
        std::string token;  // poi_id or cell tag: makes ordering total
        CostVector bound;   // lower-bound vector, or exact vector for kExact
        std::vector<std::size_t> cell_members;
    };
    auto item_after = [](const Item& a, const Item& b) {
        return std::tie(a.key, a.kind, a.token) > std::tie(b.key, b.kind, b.token);
    };
    std::priority_queue<Item, std::vector<Item>, decltype(item_after)> pq(item_after);

    const auto key_of = [](const CostVector& v) {
        double s = 0.0;
        for (const CostDim& d : v.dims) s += d.value;
        return s;
    };

    for (const auto& [coord, members] : by_cell) {
        CostVector cell_lb = candidates[members.front()].lower_bound;
        for (std::size_t k = 1; k < members.size(); ++k) {
            const CostVector& m = candidates[members[k]].lower_bound;
            for (std::size_t d = 0; d < cell_lb.dims.size(); ++d) {
                cell_lb.dims[d].value = std::min(cell_lb.dims[d].value, m.dims[d].value);
            }
        }
        Item item;
        item.key = key_of(cell_lb);
        item.kind = kCell;
        item.token = "r" + std::to_string(coord.row) + "c" + std::to_string(coord.col);
        item.bound = std::move(cell_lb);
        item.cell_members = members;
        pq.push(std::move(item));
    }

    std::vector<CostVector> skyline;
    const auto dominated_by_skyline = [&](const CostVector& v) {
        for (const CostVector& s : skyline) {
            if (dominates(s, v)) return true;
        }
        return false;
    };

    while (!pq.empty()) {
        Item item = pq.top();
        pq.pop();
        ++result.expansions;  // each expanded entry counts toward the I/O proxy

        if (dominated_by_skyline(item.bound)) continue;

        if (item.kind == kCell) {
            for (std::size_t i : item.cell_members) {
                Item child;
                child.key = key_of(candidates[i].lower_bound);
                child.kind = kPoiLb;
                child.token = candidates[i].poi->poi_id;
                child.bound = candidates[i].lower_bound;
                pq.push(std::move(child));
            }
            continue;
        }

        if (item.kind == kPoiLb) {
            // Refine: compute the exact vector, one bounded Dijkstra run per
            // travel-time dimension, then re-queue keyed by the exact sum.
            const Poi& poi = cat.get(item.token);
            CostVector exact;
            exact.owner = poi.poi_id;
            bool ok = true;

            {
                TravelTimeField f = net.shortest_travel_time({poi.snapped_node},
                                                             StopCondition::first_of({u}));
                result.expansions += f.settled_count();
                auto secs = f.seconds(u);
                if (!secs) ok = false;
                exact.dims.push_back({dim_name_origin(), secs ? static_cast<double>(*secs) : kInf});
            }
            for (std::size_t j = 0; j < q.secondary.size() && ok; ++j) {
                std::unordered_set<NodeId> targets(member_nodes[j].begin(), member_nodes[j].end());
                TravelTimeField f = net.shortest_travel_time({poi.snapped_node},
                                                             StopCondition::first_of(targets));
                result.expansions += f.settled_count();
                Seconds best = 0;
                bool found = false;
                for (NodeId m : member_nodes[j]) {
                    if (auto secs = f.seconds(m)) {
                        if (!found || *secs < best) {
                            best = *secs;
                            found = true;
                        }
                    }
                }
                if (!found) ok = false;
                exact.dims.push_back(
                    {dim_name_secondary(j, q.secondary[j]), found ? static_cast<double>(best) : kInf});
            }
            if (!ok) continue;  // unreachable on some dimension: never an answer
            for (const Objective& o : q.objectives) {
                exact.dims.push_back({dim_name_objective(o), *objective_value(poi, o)});
            }

            Item refined;
            refined.key = key_of(exact);
            refined.kind = kExact;
            refined.token = poi.poi_id;
            refined.bound = std::move(exact);
            pq.push(std::move(refined));
            continue;
        }

        // kExact, not dominated: confirmed. Pops are nondecreasing in key
        // and a dominator's exact sum is strictly smaller, so no later entry
        // can dominate it.
        skyline.push_back(std::move(item.bound));
    }

    result.members = std::move(skyline);
    sort_members_by_owner(result.members);
    result.cpu_nanos = now_nanos() - t0;
    return result;
}

}  // namespace gdrst
