#include "gdrst/road_network.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <mutex>
#include <queue>
#include <tuple>

#include "gdrst/text.hpp"

namespace gdrst {

namespace {

[[noreturn]] void row_error(const char* what_file, std::size_t line_no, const std::string& detail) {
    throw DataError(std::string(what_file) + " line " + std::to_string(line_no) + ": " + detail);
}

}  // namespace

RoadNetwork RoadNetwork::load(std::istream& nodes_source, std::istream& edges_source) {
    RoadNetwork net;

    LineReader nodes(nodes_source);
    while (auto line = nodes.next()) {
        auto parts = split(*line, ',');
        if (parts.size() != 3) row_error("nodes", nodes.line_number(), "expected `node_id,lat,lon`");
        auto id = parse_int64(parts[0]);
        auto lat = parse_double(parts[1]);
        auto lon = parse_double(parts[2]);
        if (!id || !lat || !lon) row_error("nodes", nodes.line_number(), "malformed row");
        if (net.has_node(*id)) {
            row_error("nodes", nodes.line_number(), "duplicate node " + std::to_string(*id));
        }
        try {
            net.add_node(*id, GeoPoint(*lat, *lon));
        } catch (const DataError& e) {
            row_error("nodes", nodes.line_number(), e.what());
        }
    }

    LineReader edges(edges_source);
    while (auto line = edges.next()) {
        auto parts = split(*line, ',');
        if (parts.size() != 3) row_error("edges", edges.line_number(), "expected `u,v,travel_time_s`");
        auto u = parse_int64(parts[0]);
        auto v = parse_int64(parts[1]);
        auto w = parse_int64(parts[2]);
        if (!u || !v || !w) row_error("edges", edges.line_number(), "malformed row");
        if (!net.has_node(*u)) row_error("edges", edges.line_number(), "unknown node " + std::to_string(*u));
        if (!net.has_node(*v)) row_error("edges", edges.line_number(), "unknown node " + std::to_string(*v));
        if (*u == *v) row_error("edges", edges.line_number(), "self-loop on node " + std::to_string(*u));
        if (*w <= 0 || *w > std::numeric_limits<std::uint32_t>::max()) {
            row_error("edges", edges.line_number(), "travel time must be a positive number of seconds");
        }
        net.add_edge(*u, *v, static_cast<std::uint32_t>(*w));
    }

    return net;
}

RoadNetwork RoadNetwork::load_files(const std::string& nodes_path, const std::string& edges_path) {
    std::ifstream nodes(nodes_path);
    if (!nodes) throw DataError("cannot open nodes file: " + nodes_path);
    std::ifstream edges(edges_path);
    if (!edges) throw DataError("cannot open edges file: " + edges_path);
    return load(nodes, edges);
}

void RoadNetwork::add_node(NodeId id, GeoPoint loc) {
    if (has_node(id)) throw DataError("duplicate node " + std::to_string(id));
    id_to_index_.emplace(id, static_cast<std::uint32_t>(locs_.size()));
    ids_.push_back(id);
    locs_.push_back(loc);
    adj_.emplace_back();
}

void RoadNetwork::add_edge(NodeId u, NodeId v, std::uint32_t travel_time_s) {
    if (!has_node(u)) throw DataError("unknown node " + std::to_string(u));
    if (!has_node(v)) throw DataError("unknown node " + std::to_string(v));
    if (u == v) throw DataError("self-loop on node " + std::to_string(u));
    if (travel_time_s == 0) throw DataError("travel time must be positive");

    const std::uint32_t ui = index_of(u);
    const std::uint32_t vi = index_of(v);
    const double len = haversine_distance(locs_[ui], locs_[vi]);
    for (Arc& a : adj_[ui]) {
        if (a.to == vi) {
            // Duplicate undirected edge: keep the minimum travel time.
            // Lowering the time can only raise the edge's speed, so the
            // incremental maximum stays valid.
            const std::uint32_t w = std::min(a.seconds, travel_time_s);
            set_weight(ui, vi, w);
            max_speed_ = std::max(max_speed_, len / static_cast<double>(w));
            return;
        }
    }
    adj_[ui].push_back(Arc{vi, travel_time_s});
    adj_[vi].push_back(Arc{ui, travel_time_s});
    ++edge_count_;
    max_speed_ = std::max(max_speed_, len / static_cast<double>(travel_time_s));
}

std::uint32_t RoadNetwork::index_of(NodeId id) const {
    auto it = id_to_index_.find(id);
    if (it == id_to_index_.end()) throw DataError("unknown node " + std::to_string(id));
    return it->second;
}

GeoPoint RoadNetwork::node_location(NodeId id) const { return locs_[index_of(id)]; }

bool RoadNetwork::has_edge(NodeId u, NodeId v) const {
    if (!has_node(u) || !has_node(v)) return false;
    const std::uint32_t vi = index_of(v);
    for (const Arc& a : adj_[index_of(u)]) {
        if (a.to == vi) return true;
    }
    return false;
}

std::optional<std::uint32_t> RoadNetwork::edge_travel_time(NodeId u, NodeId v) const {
    if (!has_node(u) || !has_node(v)) return std::nullopt;
    const std::uint32_t vi = index_of(v);
    for (const Arc& a : adj_[index_of(u)]) {
        if (a.to == vi) return a.seconds;
    }
    return std::nullopt;
}

void RoadNetwork::for_each_edge(const std::function<void(NodeId, NodeId, std::uint32_t)>& fn) const {
    for (std::uint32_t ui = 0; ui < adj_.size(); ++ui) {
        for (const Arc& a : adj_[ui]) {
            if (a.to > ui) fn(ids_[ui], ids_[a.to], a.seconds);
        }
    }
}

void RoadNetwork::set_weight(std::uint32_t ui, std::uint32_t vi, std::uint32_t seconds) {
    for (Arc& a : adj_[ui]) {
        if (a.to == vi) a.seconds = seconds;
    }
    for (Arc& a : adj_[vi]) {
        if (a.to == ui) a.seconds = seconds;
    }
}

std::uint64_t RoadNetwork::apply_traffic_update(const TrafficUpdate& upd) {
    std::unique_lock<std::shared_mutex> lock(*mu_);

    // Validate everything before touching a weight: no partial application.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> indices;
    indices.reserve(upd.changes.size());
    for (const auto& c : upd.changes) {
        if (c.new_travel_time_s == 0) {
            throw DataError("traffic update: travel time must be positive for edge " +
                            std::to_string(c.u) + "," + std::to_string(c.v));
        }
        if (!has_node(c.u) || !has_node(c.v) || !has_edge(c.u, c.v)) {
            throw DataError("traffic update: unknown edge " + std::to_string(c.u) + "," +
                            std::to_string(c.v));
        }
        indices.emplace_back(index_of(c.u), index_of(c.v));
    }

    for (std::size_t i = 0; i < upd.changes.size(); ++i) {
        set_weight(indices[i].first, indices[i].second, upd.changes[i].new_travel_time_s);
    }
    max_speed_ = compute_max_speed();
    return ++revision_;
}

TravelTimeField RoadNetwork::shortest_travel_time(const std::vector<NodeId>& sources,
                                                  const StopCondition& stop,
                                                  const NodeFilter& node_filter) const {
    if (sources.empty()) throw DataError("shortest_travel_time: empty source set");

    constexpr Seconds kUnset = std::numeric_limits<Seconds>::max();
    std::vector<Seconds> dist(locs_.size(), kUnset);
    std::vector<char> settled(locs_.size(), 0);

    // Min-heap keyed (time, external id) so equal-time pops settle in id
    // order; with positive weights this makes tie-breaks deterministic.
    using Entry = std::tuple<Seconds, NodeId, std::uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq;

    TravelTimeField field;
    field.revision_ = revision_;

    for (NodeId s : sources) {
        const std::uint32_t si = index_of(s);
        if (node_filter && !node_filter(s)) {
            throw DataError("shortest_travel_time: node_filter rejects source " + std::to_string(s));
        }
        if (dist[si] != 0) {
            dist[si] = 0;
            pq.emplace(0, s, si);
            field.sources_.push_back(s);
        }
    }

    while (!pq.empty()) {
        const auto [d, id, idx] = pq.top();
        pq.pop();
        if (settled[idx]) continue;
        if (d != dist[idx]) continue;  // stale entry

        if (stop.kind() == StopCondition::Kind::TimeBudget && d > stop.budget()) {
            break;  // pops are nondecreasing; nothing later fits the budget
        }

        settled[idx] = 1;
        field.times_.emplace(id, d);

        if (stop.kind() == StopCondition::Kind::FirstOf && stop.targets().count(id)) {
            break;
        }

        for (const Arc& a : adj_[idx]) {
            if (settled[a.to]) continue;
            if (node_filter && !node_filter(ids_[a.to])) continue;
            const Seconds nd = d + a.seconds;
            if (nd < dist[a.to]) {
                dist[a.to] = nd;
                pq.emplace(nd, ids_[a.to], a.to);
            }
        }
    }

    return field;
}

std::optional<std::pair<NodeId, Seconds>> RoadNetwork::nearest_poi_time(
    NodeId start, const std::unordered_set<NodeId>& target_nodes) const {
    if (target_nodes.empty()) return std::nullopt;
    TravelTimeField field = shortest_travel_time({start}, StopCondition::first_of(target_nodes));
    // The run stops at the first settled target: the (time, id)-minimal one.
    std::optional<std::pair<NodeId, Seconds>> best;
    for (const auto& [id, secs] : field.times()) {
        if (!target_nodes.count(id)) continue;
        if (!best || secs < best->second || (secs == best->second && id < best->first)) {
            best = {id, secs};
        }
    }
    return best;
}

TravelTimeField RoadNetwork::category_field(const std::vector<NodeId>& category_nodes) const {
    if (category_nodes.empty()) throw DataError("category_field: empty category");
    return shortest_travel_time(category_nodes, StopCondition::exhaust());
}

double RoadNetwork::compute_max_speed() const {
    double best = 0.0;
    for (std::uint32_t ui = 0; ui < adj_.size(); ++ui) {
        for (const Arc& a : adj_[ui]) {
            if (a.to < ui) continue;
            const double len = haversine_distance(locs_[ui], locs_[a.to]);
            best = std::max(best, len / static_cast<double>(a.seconds));
        }
    }
    return best;
}

TrafficUpdate parse_traffic_update(const std::string& text) {
    TrafficUpdate upd;
    for (std::string_view part : split(text, ';')) {
        part = trim(part);
        if (part.empty()) continue;
        auto fields = split(part, ',');
        if (fields.size() != 3) throw DataError("traffic update: expected `u,v,seconds`: " + std::string(part));
        auto u = parse_int64(fields[0]);
        auto v = parse_int64(fields[1]);
        auto w = parse_int64(fields[2]);
        if (!u || !v || !w || *w <= 0 || *w > std::numeric_limits<std::uint32_t>::max()) {
            throw DataError("traffic update: malformed change: " + std::string(part));
        }
        upd.changes.push_back({*u, *v, static_cast<std::uint32_t>(*w)});
    }
    return upd;
}

}  // namespace gdrst
