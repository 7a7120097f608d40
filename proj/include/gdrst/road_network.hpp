#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gdrst/geo.hpp"

namespace gdrst {

using NodeId = std::int64_t;
using Seconds = std::uint64_t;

// Edge-weight change set. Applied atomically; every (u, v) must name an
// existing undirected edge and new_travel_time_s must be positive.
struct TrafficUpdate {
    struct Change {
        NodeId u = 0;
        NodeId v = 0;
        std::uint32_t new_travel_time_s = 0;
    };
    std::vector<Change> changes;
};

/**
 * Travel times from a source set, as produced by a (possibly truncated)
 * multi-source Dijkstra run. Nodes absent from the map were not settled:
 * either unreachable or beyond the stop condition. Carries the traffic
 * revision it was computed at so staleness is detectable.
 */
class TravelTimeField {
public:
    bool reachable(NodeId n) const { return times_.count(n) != 0; }
    std::optional<Seconds> seconds(NodeId n) const {
        auto it = times_.find(n);
        if (it == times_.end()) return std::nullopt;
        return it->second;
    }
    const std::unordered_map<NodeId, Seconds>& times() const { return times_; }
    const std::vector<NodeId>& sources() const { return sources_; }
    std::uint64_t revision() const { return revision_; }

    // Number of settled nodes: the engine's I/O-cost proxy.
    std::uint64_t settled_count() const { return times_.size(); }

private:
    friend class RoadNetwork;
    std::unordered_map<NodeId, Seconds> times_;
    std::vector<NodeId> sources_;
    std::uint64_t revision_ = 0;
};

// When a Dijkstra run may stop early. Settled entries are exact regardless
// of the condition chosen.
class StopCondition {
public:
    enum class Kind { Exhaust, FirstOf, TimeBudget };

    static StopCondition exhaust() { return StopCondition(Kind::Exhaust); }
    static StopCondition first_of(std::unordered_set<NodeId> targets) {
        StopCondition c(Kind::FirstOf);
        c.targets_ = std::move(targets);
        return c;
    }
    static StopCondition time_budget(Seconds budget) {
        StopCondition c(Kind::TimeBudget);
        c.budget_ = budget;
        return c;
    }

    Kind kind() const { return kind_; }
    const std::unordered_set<NodeId>& targets() const { return targets_; }
    Seconds budget() const { return budget_; }

private:
    explicit StopCondition(Kind k) : kind_(k) {}
    Kind kind_;
    std::unordered_set<NodeId> targets_;
    Seconds budget_ = 0;
};

using NodeFilter = std::function<bool(NodeId)>;

/**
 * Weighted undirected road graph. Vertices are intersections with
 * coordinates; edge weights are travel times in whole seconds (> 0).
 * Weights are mutable through apply_traffic_update only, which bumps a
 * monotone traffic revision; concurrent readers take read_lock() while a
 * traffic update holds the write side.
 */
class RoadNetwork {
public:
    RoadNetwork() = default;

    // Parses the documented plain formats: nodes `node_id,lat,lon` and
    // edges `u,v,travel_time_s`, `#` comments, LF or CRLF. Duplicate
    // undirected edges collapse to the minimum travel time.
    static RoadNetwork load(std::istream& nodes_source, std::istream& edges_source);
    static RoadNetwork load_files(const std::string& nodes_path, const std::string& edges_path);

    // Programmatic construction (generator, tests).
    void add_node(NodeId id, GeoPoint loc);
    void add_edge(NodeId u, NodeId v, std::uint32_t travel_time_s);

    std::size_t node_count() const { return locs_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    bool has_node(NodeId id) const { return id_to_index_.count(id) != 0; }
    GeoPoint node_location(NodeId id) const;
    const std::vector<NodeId>& node_ids() const { return ids_; }

    bool has_edge(NodeId u, NodeId v) const;
    std::optional<std::uint32_t> edge_travel_time(NodeId u, NodeId v) const;
    void for_each_edge(const std::function<void(NodeId, NodeId, std::uint32_t)>& fn) const;

    std::uint64_t traffic_revision() const { return revision_; }

    // Replaces the named edge weights in both directions and increments the
    // traffic revision by exactly one. All-or-nothing: an unknown edge or a
    // non-positive weight leaves the network untouched.
    std::uint64_t apply_traffic_update(const TrafficUpdate& upd);

    /**
     * Multi-source Dijkstra over edges whose BOTH endpoints satisfy
     * node_filter (an empty filter admits everything). Equal-time pops are
     * ordered by node id, so settle order and tie-breaks are deterministic.
     * Sources must be nonempty, present, and admitted by the filter.
     */
    TravelTimeField shortest_travel_time(const std::vector<NodeId>& sources,
                                         const StopCondition& stop = StopCondition::exhaust(),
                                         const NodeFilter& node_filter = {}) const;

    // Nearest member of target_nodes by travel time from start; ties broken
    // by smaller node id. nullopt when nothing is reachable.
    std::optional<std::pair<NodeId, Seconds>> nearest_poi_time(
        NodeId start, const std::unordered_set<NodeId>& target_nodes) const;

    // Travel time from every node to its closest member of category_nodes.
    // One exhaustive multi-source run; callers reuse it across candidates.
    TravelTimeField category_field(const std::vector<NodeId>& category_nodes) const;

    // Fastest observed edge speed (great-circle length / travel time), the
    // admissibility bound for distance-based lower bounds. Maintained
    // eagerly: updated on edge insertion, recomputed under the write lock
    // when a traffic update changes weights.
    double max_edge_speed_mps() const { return max_speed_; }

    // Readers hold this across a query so they never observe a half-applied
    // traffic update.
    std::shared_lock<std::shared_mutex> read_lock() const {
        return std::shared_lock<std::shared_mutex>(*mu_);
    }

private:
    struct Arc {
        std::uint32_t to;       // dense index
        std::uint32_t seconds;
    };

    std::uint32_t index_of(NodeId id) const;
    void set_weight(std::uint32_t ui, std::uint32_t vi, std::uint32_t seconds);
    double compute_max_speed() const;

    std::vector<GeoPoint> locs_;                 // dense index -> location
    std::vector<NodeId> ids_;                    // dense index -> external id
    std::unordered_map<NodeId, std::uint32_t> id_to_index_;
    std::vector<std::vector<Arc>> adj_;
    std::size_t edge_count_ = 0;
    std::uint64_t revision_ = 0;
    double max_speed_ = 0.0;
    mutable std::unique_ptr<std::shared_mutex> mu_ = std::make_unique<std::shared_mutex>();
};

// Parses a traffic schedule line set of the form `u,v,t[;u,v,t...]`.
TrafficUpdate parse_traffic_update(const std::string& text);

}  // namespace gdrst
