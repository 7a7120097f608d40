#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "gdrst/workbench.hpp"

using gdrst::Algo;
using gdrst::BenchOptions;
using gdrst::Engine;
using gdrst::EngineOptions;
using gdrst::GridIndex;
using gdrst::PoiCatalog;
using gdrst::RoadNetwork;

namespace {

const std::string kDataDir = GDRST_DATA_DIR;

struct Demo {
    RoadNetwork net;
    GridIndex idx;
    PoiCatalog cat;
};

Demo load_demo() {
    Demo d;
    d.net = RoadNetwork::load_files(kDataDir + "/fixtures/demo_nodes.csv",
                                    kDataDir + "/fixtures/demo_edges.csv");
    d.idx = GridIndex::build(d.net, 0.01, 0.01);
    d.cat = PoiCatalog::load_file(kDataDir + "/fixtures/demo_pois.csv", d.net, d.idx);
    return d;
}

std::vector<gdrst::SkylineQuery> load_demo_queries() {
    std::ifstream in(kDataDir + "/fixtures/demo_queries.txt");
    REQUIRE(in);
    return gdrst::parse_queries(in);
}

}  // namespace

TEST_CASE("run_benchmark: one query, two algorithms, equal result sizes") {
    Demo d = load_demo();
    EngineOptions eopt;
    eopt.use_cache = false;
    Engine engine(d.net, d.cat, d.idx, eopt);

    BenchOptions opts;
    opts.algorithms = {Algo::Gdrst, Algo::Oracle};
    opts.compare = true;
    const auto rows = gdrst::run_benchmark(engine, {load_demo_queries()[0]}, opts);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].algorithm == "gdrst");
    CHECK(rows[1].algorithm == "oracle");
    CHECK(rows[0].result_size == rows[1].result_size);
    CHECK(rows[0].status == "ok");
}

TEST_CASE("run_benchmark: comparison mode always carries oracle rows") {
    Demo d = load_demo();
    EngineOptions eopt;
    eopt.use_cache = false;
    Engine engine(d.net, d.cat, d.idx, eopt);

    BenchOptions opts;
    opts.algorithms = {Algo::Gdrst};  // oracle not requested explicitly
    opts.compare = true;
    const auto rows = gdrst::run_benchmark(engine, {load_demo_queries()[0]}, opts);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].algorithm == "oracle");
}

TEST_CASE("run_benchmark: repeated query with the cache on hits on the second row") {
    Demo d = load_demo();
    Engine engine(d.net, d.cat, d.idx);  // cache on by default
    const auto q = load_demo_queries()[0];

    BenchOptions opts;
    const auto rows = gdrst::run_benchmark(engine, {q, q}, opts);
    REQUIRE(rows.size() == 2);
    CHECK_FALSE(rows[0].cache_hit);
    CHECK(rows[0].expansions > 0);
    CHECK(rows[1].cache_hit);
    CHECK(rows[1].expansions == 0);
}

TEST_CASE("run_benchmark: comparison mode passes on the demo fixture across all algorithms") {
    Demo d = load_demo();
    EngineOptions eopt;
    eopt.use_cache = false;
    Engine engine(d.net, d.cat, d.idx, eopt);

    BenchOptions opts;
    opts.algorithms = {Algo::Gdrst, Algo::Bbs, Algo::Oracle};
    opts.compare = true;
    const auto rows = gdrst::run_benchmark(engine, load_demo_queries(), opts);
    CHECK(rows.size() == 6);
    std::map<std::string, std::size_t> sizes;
    for (const auto& r : rows) sizes[r.query_id + "/" + std::to_string(r.result_size)]++;
    // every algorithm agreed per query, so each (query,size) bucket holds 3
    for (const auto& [key, count] : sizes) CHECK(count == 3);
}

TEST_CASE("run_benchmark: parallel replay agrees with the sequential pass") {
    Demo d = load_demo();
    Engine engine(d.net, d.cat, d.idx);
    auto queries = load_demo_queries();
    queries.push_back(queries[0]);
    queries.push_back(queries[1]);

    BenchOptions opts;
    opts.parallel = true;
    CHECK_NOTHROW(gdrst::run_benchmark(engine, queries, opts));
}

TEST_CASE("benchmark CSV: stable schema, determinism modulo cpu_nanos") {
    Demo d = load_demo();
    const auto queries = load_demo_queries();

    auto run_once = [&]() {
        EngineOptions eopt;
        eopt.use_cache = false;
        Engine engine(d.net, d.cat, d.idx, eopt);
        BenchOptions opts;
        opts.algorithms = {Algo::Gdrst, Algo::Bbs};
        opts.repetitions = 2;
        std::ostringstream out;
        gdrst::write_benchmark_csv(out, gdrst::run_benchmark(engine, queries, opts));
        return out.str();
    };

    const std::string a = run_once();
    const std::string b = run_once();

    std::istringstream sa(a), sb(b);
    std::string la, lb;
    std::getline(sa, la);
    std::getline(sb, lb);
    CHECK(la == "query_id,algorithm,rep,expansions,cpu_nanos,result_size,cache_hit,revision,status");
    CHECK(la == lb);
    int rows = 0;
    while (std::getline(sa, la) && std::getline(sb, lb)) {
        // blank out column 5 (cpu_nanos) on both sides
        auto strip_nanos = [](const std::string& line) {
            std::vector<std::string> cols;
            std::stringstream ss(line);
            std::string col;
            while (std::getline(ss, col, ',')) cols.push_back(col);
            REQUIRE(cols.size() == 9);
            cols[4] = "-";
            std::string joined;
            for (const auto& c : cols) joined += c + ",";
            return joined;
        };
        CHECK(strip_nanos(la) == strip_nanos(lb));
        ++rows;
    }
    CHECK(rows == 8);  // 2 queries x 2 algorithms x 2 reps
}

TEST_CASE("cache_experiment: hits, misses and scheduled traffic") {
    Demo d = load_demo();
    Engine engine(d.net, d.cat, d.idx);
    const auto queries = load_demo_queries();

    SUBCASE("same query twice, no traffic: second is a hit") {
        const auto rows = gdrst::cache_experiment(engine, {queries[0], queries[0]}, {});
        REQUIRE(rows.size() == 2);
        CHECK_FALSE(rows[0].cache_hit);
        CHECK(rows[1].cache_hit);
        CHECK(rows[1].expansions == 0);
    }

    SUBCASE("an update between repeats forces a recompute") {
        gdrst::TrafficSchedule schedule;
        gdrst::TrafficUpdate upd;
        upd.changes.push_back({0, 12, 90});
        schedule.emplace_back(0, upd);

        const auto rows = gdrst::cache_experiment(engine, {queries[0], queries[0]}, schedule);
        REQUIRE(rows.size() == 2);
        CHECK_FALSE(rows[0].cache_hit);
        CHECK_FALSE(rows[1].cache_hit);
        CHECK(rows[1].revision == rows[0].revision + 1);
    }
}

TEST_CASE("schedule parser") {
    std::istringstream in(
        "# after query 0, slow the spine\n"
        "0: 0,12,600\n"
        "2: 12,3,50; 12,6,75\n");
    const auto schedule = gdrst::parse_schedule(in);
    REQUIRE(schedule.size() == 2);
    CHECK(schedule[0].first == 0);
    REQUIRE(schedule[0].second.changes.size() == 1);
    CHECK(schedule[0].second.changes[0].new_travel_time_s == 600);
    CHECK(schedule[1].first == 2);
    CHECK(schedule[1].second.changes.size() == 2);

    std::istringstream bad("nope\n");
    CHECK_THROWS_AS(gdrst::parse_schedule(bad), gdrst::DataError);
}

TEST_CASE("cache CSV schema") {
    std::ostringstream out;
    gdrst::write_cache_csv(out, {});
    CHECK(out.str() == "query_index,query_id,cache_hit,expansions,cpu_nanos,result_size,revision\n");
}

TEST_CASE("algorithm names parse both ways") {
    CHECK(gdrst::algo_name(gdrst::parse_algo("gdrst")) == "gdrst");
    CHECK(gdrst::algo_name(gdrst::parse_algo("bbs")) == "bbs");
    CHECK(gdrst::algo_name(gdrst::parse_algo("oracle")) == "oracle");
    CHECK_THROWS_AS(gdrst::parse_algo("dijkstra"), gdrst::DataError);
}
