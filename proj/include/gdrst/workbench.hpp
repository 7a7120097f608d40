#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "gdrst/engine.hpp"

namespace gdrst {

enum class Algo { Gdrst, Bbs, Oracle };

std::string algo_name(Algo a);
Algo parse_algo(const std::string& name);

/**
 * One benchmark row: per (query, algorithm, repetition). `expansions`
 * counts settled Dijkstra nodes plus expanded branch-and-bound entries,
 * the engine's stand-in for I/O cost; `status` is "ok" or "error" (a query
 * with no node in its sector).
 */
struct BenchmarkRecord {
    std::string query_id;
    std::string algorithm;
    int rep = 0;
    std::uint64_t expansions = 0;
    std::uint64_t cpu_nanos = 0;
    std::size_t result_size = 0;
    bool cache_hit = false;
    std::uint64_t revision = 0;
    std::string status = "ok";
};

struct BenchOptions {
    std::vector<Algo> algorithms = {Algo::Gdrst};
    int repetitions = 1;
    // Hard-assert member-set equality across algorithms per query; a
    // mismatch raises MismatchError carrying a reproducer dump. The oracle
    // is always run (and reported) in this mode.
    bool compare = false;
    // Re-run the workload concurrently (cache off) and assert member sets
    // identical to the sequential pass.
    bool parallel = false;
};

// Replays the workload sequentially, one row per (query, algorithm, rep).
// Dataset loading and index building happen before this call; only query
// processing is timed.
std::vector<BenchmarkRecord> run_benchmark(Engine& engine, const std::vector<SkylineQuery>& queries,
                                           const BenchOptions& raw_opts);

struct CacheBenchRecord {
    std::size_t query_index = 0;
    std::string query_id;
    bool cache_hit = false;
    std::uint64_t expansions = 0;
    std::uint64_t cpu_nanos = 0;
    std::size_t result_size = 0;
    std::uint64_t revision = 0;
};

// (after_query_index, update): the update is applied after replaying the
// query at that 0-based index.
using TrafficSchedule = std::vector<std::pair<std::size_t, TrafficUpdate>>;

// Schedule file lines: `<after_query_index>: u,v,t[;u,v,t...]`.
TrafficSchedule parse_schedule(std::istream& in);

// Replays queries in order with the cache on, interleaving scheduled
// traffic updates, recording hit/miss and latency per query.
std::vector<CacheBenchRecord> cache_experiment(Engine& engine,
                                               const std::vector<SkylineQuery>& queries,
                                               const TrafficSchedule& schedule);

void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRecord>& rows);
void write_cache_csv(std::ostream& out, const std::vector<CacheBenchRecord>& rows);

}  // namespace gdrst
