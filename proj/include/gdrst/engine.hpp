#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gdrst/grid_index.hpp"
#include "gdrst/poi_catalog.hpp"
#include "gdrst/query.hpp"
#include "gdrst/road_network.hpp"
#include "gdrst/skyline.hpp"

namespace gdrst {

/**
 * LFU-evicted store of skyline results keyed by normalized query text.
 * Entries are only ever served at the traffic revision they were computed
 * at; stale entries are purged on sight, never returned. All operations
 * are atomic read-modify-write.
 */
class SkylineCache {
public:
    explicit SkylineCache(std::size_t capacity) : capacity_(capacity) {}

    // Fresh entry for key at current_revision, bumping its hit count; a
    // stale entry under this key is purged and reported as a miss.
    std::optional<SkylineResult> lookup(const std::string& key, std::uint64_t current_revision);

    // Inserts (or replaces) with hit_count 0. When capacity is exceeded the
    // entry with the fewest hits is evicted, ties to the oldest insertion.
    // Returns the evicted key, if any.
    std::optional<std::string> store(const std::string& key, SkylineResult result);

    // Purges entries computed before new_revision; returns how many.
    std::size_t invalidate_older_than(std::uint64_t new_revision);

    // Declares all entries valid at new_revision (the survival path when a
    // traffic change is below the configured drastic-change threshold).
    void restamp_all(std::uint64_t new_revision);

    std::size_t size() const;
    std::size_t capacity() const { return capacity_; }
    std::optional<std::uint64_t> hit_count(const std::string& key) const;

private:
    struct Entry {
        SkylineResult result;
        std::uint64_t hit_count = 0;
        std::uint64_t inserted_seq = 0;
    };

    mutable std::mutex mu_;
    std::size_t capacity_;
    std::uint64_t next_seq_ = 0;
    std::unordered_map<std::string, Entry> entries_;
};

// Algorithm heap entry: a candidate's cost vector under construction.
// Dimensions below next_dim are final exact values.
struct HeapEntry {
    std::string poi_id;
    CostVector vector;
    std::size_t next_dim = 0;
};

struct EngineOptions {
    std::size_t cache_capacity = 128;
    bool use_cache = true;
    // Entries survive a traffic update (restamped to the new revision) when
    // the changed-edge fraction is strictly below this; 0 means any update
    // is drastic and flushes everything.
    double cache_survive_changed_fraction = 0.0;
};

struct QueryOutcome {
    SkylineResult result;
    bool cache_hit = false;
};

/**
 * The goal-directed skyline engine: nearest-vertex lookup, Filter phase,
 * Heap phase (travel-time fields per secondary preference, computed once
 * per preference and traffic revision, then reused), Skyline-refine phase,
 * and the dynamic result cache.
 *
 * Queries are read-only over a consistent network snapshot and may run
 * concurrently; apply_traffic is the single-writer path.
 */
class Engine {
public:
    Engine(RoadNetwork& net, const PoiCatalog& cat, const GridIndex& idx, EngineOptions opt = {});

    QueryOutcome execute_query(const SkylineQuery& q);

    // Applies the update, bumps the revision and performs cache hygiene
    // (flush, or restamp below the survival threshold).
    std::uint64_t apply_traffic(const TrafficUpdate& upd);

    struct CandidateSeed {
        std::string poi_id;
        Seconds from_origin = 0;
    };

    // Heap phase over an explicit candidate list (exposed for testing):
    // dim 0 from the seed, one travel-time dimension per secondary spec,
    // then attribute objectives. Entries missing any dimension come back
    // marked unreachable.
    std::vector<HeapEntry> heap_phase(const std::vector<CandidateSeed>& candidates,
                                      const std::vector<PreferenceSpec>& secondary,
                                      const std::vector<Objective>& objectives,
                                      std::vector<std::string>& warnings,
                                      std::uint64_t& expansions);

    std::string cache_key(const SkylineQuery& q) const;

    SkylineCache& cache() { return cache_; }
    RoadNetwork& network() { return net_; }
    const PoiCatalog& catalog() const { return cat_; }
    const GridIndex& grid() const { return idx_; }
    const EngineOptions& options() const { return opt_; }

private:
    // Travel-time field to the nearest member of a preference's filtered
    // set, memoized per (canonical spec, revision).
    std::shared_ptr<const TravelTimeField> secondary_field(const PreferenceSpec& spec,
                                                           std::uint64_t revision,
                                                           std::uint64_t& expansions,
                                                           bool& empty_members);

    RoadNetwork& net_;
    const PoiCatalog& cat_;
    const GridIndex& idx_;
    EngineOptions opt_;
    SkylineCache cache_;

    std::mutex memo_mu_;
    std::unordered_map<std::string, std::shared_ptr<const TravelTimeField>> field_memo_;
};

}  // namespace gdrst
