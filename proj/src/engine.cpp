#include "gdrst/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace gdrst {

namespace {

std::uint64_t now_nanos() {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

}  // namespace

std::optional<SkylineResult> SkylineCache::lookup(const std::string& key,
                                                  std::uint64_t current_revision) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    if (it->second.result.revision != current_revision) {
        entries_.erase(it);  // stale: never served
        return std::nullopt;
    }
    ++it->second.hit_count;
    return it->second.result;
}

std::optional<std::string> SkylineCache::store(const std::string& key, SkylineResult result) {
    std::lock_guard<std::mutex> lock(mu_);
    Entry e;
    e.result = std::move(result);
    e.hit_count = 0;
    e.inserted_seq = next_seq_++;
    entries_[key] = std::move(e);

    if (entries_.size() <= capacity_) return std::nullopt;

    auto victim = entries_.begin();
    for (auto it = std::next(entries_.begin()); it != entries_.end(); ++it) {
        const bool fewer_hits = it->second.hit_count < victim->second.hit_count;
        const bool tie_older = it->second.hit_count == victim->second.hit_count &&
                               it->second.inserted_seq < victim->second.inserted_seq;
        if (fewer_hits || tie_older) victim = it;
    }
    std::string evicted = victim->first;
    entries_.erase(victim);
    return evicted;
}

std::size_t SkylineCache::invalidate_older_than(std::uint64_t new_revision) {
    std::lock_guard<std::mutex> lock(mu_);
    std::size_t purged = 0;
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (it->second.result.revision < new_revision) {
            it = entries_.erase(it);
            ++purged;
        } else {
            ++it;
        }
    }
    return purged;
}

void SkylineCache::restamp_all(std::uint64_t new_revision) {
    std::lock_guard<std::mutex> lock(mu_);
    for (auto& [key, entry] : entries_) entry.result.revision = new_revision;
}

std::size_t SkylineCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return entries_.size();
}

std::optional<std::uint64_t> SkylineCache::hit_count(const std::string& key) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second.hit_count;
}

Engine::Engine(RoadNetwork& net, const PoiCatalog& cat, const GridIndex& idx, EngineOptions opt)
    : net_(net), cat_(cat), idx_(idx), opt_(opt), cache_(opt.cache_capacity) {}

std::string Engine::cache_key(const SkylineQuery& q) const {
    // Approximate-identity key: the origin is quantized to its grid cell and
    // the bearing to a compass octant, so nearby repeats of the same
    // preference set hit the same entry.
    std::ostringstream out;
    const CellCoord c = idx_.cell_of(q.origin);
    out << "r" << c.row << "c" << c.col << "|";
    if (q.heading.full_circle()) {
        out << "h*";
    } else {
        out << "h" << static_cast<int>(std::fmod(q.heading.bearing, 360.0) / 45.0) << "/"
            << q.heading.half_angle;
    }
    out << "|P:" << q.primary.canonical_key();
    for (const PreferenceSpec& s : q.secondary) out << "|S:" << s.canonical_key();
    for (const Objective& o : q.objectives) out << "|O:" << dim_name_objective(o);
    return out.str();
}

std::shared_ptr<const TravelTimeField> Engine::secondary_field(const PreferenceSpec& spec,
                                                               std::uint64_t revision,
                                                               std::uint64_t& expansions,
                                                               bool& empty_members) {
    empty_members = false;
    const std::string memo_key = spec.canonical_key();

    std::lock_guard<std::mutex> lock(memo_mu_);
    auto it = field_memo_.find(memo_key);
    if (it != field_memo_.end() && it->second->revision() == revision) {
        return it->second;  // reused: no new expansions
    }

    std::vector<NodeId> member_nodes;
    for (const std::string& id : cat_.filter_phase(spec)) {
        member_nodes.push_back(cat_.get(id).snapped_node);
    }
    std::sort(member_nodes.begin(), member_nodes.end());
    member_nodes.erase(std::unique(member_nodes.begin(), member_nodes.end()), member_nodes.end());
    if (member_nodes.empty()) {
        empty_members = true;
        field_memo_.erase(memo_key);
        return nullptr;
    }

    auto field = std::make_shared<TravelTimeField>(net_.category_field(member_nodes));
    expansions += field->settled_count();
    field_memo_[memo_key] = field;
    return field;
}

std::vector<HeapEntry> Engine::heap_phase(const std::vector<CandidateSeed>& candidates,
                                          const std::vector<PreferenceSpec>& secondary,
                                          const std::vector<Objective>& objectives,
                                          std::vector<std::string>& warnings,
                                          std::uint64_t& expansions) {
    const std::uint64_t revision = net_.traffic_revision();
    constexpr double kInf = std::numeric_limits<double>::infinity();

    std::vector<HeapEntry> entries;
    entries.reserve(candidates.size());
    for (const CandidateSeed& seed : candidates) {
        HeapEntry e;
        e.poi_id = seed.poi_id;
        e.vector.owner = seed.poi_id;
        e.vector.dims.push_back({dim_name_origin(), static_cast<double>(seed.from_origin)});
        e.next_dim = 1;
        entries.push_back(std::move(e));
    }

    for (std::size_t j = 0; j < secondary.size(); ++j) {
        bool empty_members = false;
        auto field = secondary_field(secondary[j], revision, expansions, empty_members);
        if (empty_members) warnings.push_back(empty_spec_warning(secondary[j]));

        const std::string name = dim_name_secondary(j, secondary[j]);
        for (HeapEntry& e : entries) {
            std::optional<Seconds> secs;
            if (field) secs = field->seconds(cat_.get(e.poi_id).snapped_node);
            if (secs) {
                e.vector.dims.push_back({name, static_cast<double>(*secs)});
            } else {
                e.vector.dims.push_back({name, kInf});
                e.vector.unreachable = true;
            }
            e.next_dim = j + 2;
        }
    }

    for (const Objective& o : objectives) {
        const std::string name = dim_name_objective(o);
        for (HeapEntry& e : entries) {
            const Poi& poi = cat_.get(e.poi_id);
            auto it = poi.attributes.find(o.attribute);
            if (it == poi.attributes.end()) {
                // No value to rank by: the candidate cannot be costed.
                e.vector.dims.push_back({name, kInf});
                e.vector.unreachable = true;
            } else {
                const double v = o.sense == Sense::Maximize ? -it->second : it->second;
                e.vector.dims.push_back({name, v});
            }
            ++e.next_dim;
        }
    }

    return entries;
}

QueryOutcome Engine::execute_query(const SkylineQuery& q) {
    auto lock = net_.read_lock();
    const std::uint64_t revision = net_.traffic_revision();
    const std::string key = cache_key(q);

    if (opt_.use_cache) {
        const std::uint64_t t0 = now_nanos();
        if (auto hit = cache_.lookup(key, revision)) {
            hit->expansions = 0;  // nothing was recomputed
            hit->cpu_nanos = now_nanos() - t0;
            return {std::move(*hit), true};
        }
    }

    const std::uint64_t t0 = now_nanos();
    std::uint64_t expansions = 0;
    std::vector<std::string> warnings;

    // Nearest vertex for the query origin, restricted to the travel sector.
    const NodeId u = idx_.nearest_node(q.origin, q.heading);

    // Filter phase: category + label/range filters, then the sector test on
    // candidate locations. No travel-time work happens here.
    std::vector<std::string> candidate_ids;
    for (const std::string& id : cat_.filter_phase(q.primary)) {
        if (within_sector(q.origin, q.heading, cat_.get(id).location)) {
            candidate_ids.push_back(id);
        }
    }

    // Travel time from u to every reachable node; candidates the origin
    // cannot reach are discarded (they cannot be answers).
    TravelTimeField origin_field = net_.shortest_travel_time({u});
    expansions += origin_field.settled_count();

    std::vector<CandidateSeed> seeds;
    seeds.reserve(candidate_ids.size());
    for (const std::string& id : candidate_ids) {
        if (auto secs = origin_field.seconds(cat_.get(id).snapped_node)) {
            seeds.push_back({id, *secs});
        }
    }

    // Heap phase: complete each candidate's cost vector.
    std::vector<HeapEntry> entries = heap_phase(seeds, q.secondary, q.objectives, warnings, expansions);

    std::vector<CostVector> vectors;
    vectors.reserve(entries.size());
    for (HeapEntry& e : entries) {
        if (!e.vector.unreachable) vectors.push_back(std::move(e.vector));
    }

    // Skyline-refine phase.
    SkylineResult result;
    result.members = skyline_of(vectors);
    sort_members_by_owner(result.members);
    result.revision = revision;
    result.expansions = expansions;
    result.warnings = std::move(warnings);
    result.cpu_nanos = now_nanos() - t0;

    if (opt_.use_cache) cache_.store(key, result);
    return {std::move(result), false};
}

std::uint64_t Engine::apply_traffic(const TrafficUpdate& upd) {
    const std::size_t edges = std::max<std::size_t>(net_.edge_count(), 1);
    const double changed_fraction = static_cast<double>(upd.changes.size()) / static_cast<double>(edges);
    const std::uint64_t revision = net_.apply_traffic_update(upd);
    if (changed_fraction < opt_.cache_survive_changed_fraction) {
        cache_.restamp_all(revision);
    } else {
        cache_.invalidate_older_than(revision);
    }
    return revision;
}

}  // namespace gdrst
