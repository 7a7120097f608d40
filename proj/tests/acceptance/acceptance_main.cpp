// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Heavier datasets are generated under --work-dir.

#include <algorithm>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "gdrst/baselines.hpp"
#include "gdrst/engine.hpp"
#include "gdrst/generator.hpp"
#include "gdrst/workbench.hpp"

#include "../support/instance_factory.hpp"
#include "../support/oracles.hpp"
#include "../support/test_rng.hpp"

namespace {

using namespace gdrst;
using gdrst_test::TestRng;

const std::string kDataDir = GDRST_DATA_DIR;

struct Criterion {
    bool ok = true;
    std::ostringstream log;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (log.tellp() < 4000) log << "    FAIL: " << what << "\n";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::uint64_t median_u64(std::vector<std::uint64_t> xs) {
    if (xs.empty()) return 0;
    std::sort(xs.begin(), xs.end());
    return xs[xs.size() / 2];
}

// ---------------------------------------------------------------- c1 ----
// execute_query member sets and cost vectors exactly equal the brute-force
// oracle over 1,000 seeded random instances.
void criterion_oracle_equivalence(Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t compared = 0, errors_agreed = 0;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        auto inst = gdrst_test::make_random_instance(seed);
        Engine engine(inst.net, inst.cat, inst.idx);

        SkylineResult got, want;
        bool got_error = false, want_error = false;
        try {
            got = engine.execute_query(inst.query).result;
        } catch (const QueryError&) {
            got_error = true;
        }
        try {
            want = oracle_gdrst(inst.net, inst.cat, inst.query);
        } catch (const QueryError&) {
            want_error = true;
        }
        c.require(got_error == want_error, "error behavior diverged at seed " + std::to_string(seed));
        if (got_error || want_error) {
            ++errors_agreed;
            continue;
        }
        if (!(got.member_ids() == want.member_ids() && got.same_members_and_vectors(want))) {
            c.require(false, "member/vector mismatch at seed " + std::to_string(seed) +
                                 " query: " + format_query_record(inst.query));
        }
        ++compared;
    }
    const double elapsed = seconds_since(t0);
    c.require(elapsed < 180.0, "runtime " + std::to_string(elapsed) + "s exceeds 3 minutes");
    c.log << "    " << compared << " instances compared exactly, " << errors_agreed
          << " agreed errors, " << elapsed << "s\n";
}

// ---------------------------------------------------------------- c2 ----
// filter_phase on the bundled hospital table with the LOW COST label filter.
void criterion_lowcost_filter(Criterion& c) {
    RoadNetwork net = RoadNetwork::load_files(kDataDir + "/fixtures/hospitals_nodes.csv",
                                              kDataDir + "/fixtures/hospitals_edges.csv");
    GridIndex idx = GridIndex::build(net, 0.05, 0.05);
    PoiCatalog cat = PoiCatalog::load_file(kDataDir + "/fixtures/hospitals.csv", net, idx);

    PreferenceSpec spec;
    spec.category = "hospital";
    spec.label_filter = {{"LOW COST"}};
    const auto got = cat.filter_phase(spec);
    const std::vector<std::string> want = {"H1", "H4", "H6", "H9"};
    c.require(got == want, "expected {H1,H4,H6,H9}");
    c.log << "    filtered " << cat.size() << " hospitals down to " << got.size() << "\n";
}

// ---------------------------------------------------------------- c3 ----
// Grid nearest-node equals the linear scan on 10,000 (node-set, probe)
// cases, with and without sector constraints, ties included.
void criterion_grid_nearest(Criterion& c) {
    TestRng rng(333444);
    std::size_t cases = 0, with_sector = 0;
    for (int set = 0; set < 40 && c.ok; ++set) {
        const std::size_t n = 50 + rng.below(3000);
        const double lat0 = rng.uniform(-55.0, 50.0), lon0 = rng.uniform(-160.0, 150.0);
        const double span = 0.1 + rng.unit() * 2.0;
        RoadNetwork net;
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0 && rng.chance(0.03)) {
                net.add_node(static_cast<NodeId>(i),
                             net.node_location(static_cast<NodeId>(rng.below(i))));
            } else {
                net.add_node(static_cast<NodeId>(i),
                             GeoPoint(lat0 + rng.unit() * span, lon0 + rng.unit() * span));
            }
        }
        const double cell = 0.005 + rng.unit() * 0.15;
        const GridIndex idx = GridIndex::build(net, cell, cell);

        for (int probe = 0; probe < 250; ++probe, ++cases) {
            const GeoPoint loc(lat0 + (rng.unit() * 1.8 - 0.4) * span,
                               lon0 + (rng.unit() * 1.8 - 0.4) * span);
            std::optional<Heading> heading;
            if (rng.chance(0.5)) {
                heading = Heading(rng.unit() * 359.9, rng.chance(0.5) ? 90.0 : 180.0);
                ++with_sector;
            }

            std::optional<std::pair<double, NodeId>> best;
            for (NodeId id : net.node_ids()) {
                const GeoPoint p = net.node_location(id);
                if (heading && !within_sector(loc, *heading, p)) continue;
                const double dist = haversine_distance(loc, p);
                if (!best || dist < best->first || (dist == best->first && id < best->second)) {
                    best = {dist, id};
                }
            }
            if (!best) {
                try {
                    (void)idx.nearest_node(loc, heading);
                    c.require(false, "expected no-node-in-sector error");
                } catch (const QueryError&) {
                }
            } else {
                NodeId got = -1;
                try {
                    got = idx.nearest_node(loc, heading);
                } catch (const QueryError&) {
                    c.require(false, "unexpected no-node-in-sector error");
                    continue;
                }
                if (got != best->second) {
                    c.require(false, "nearest mismatch: got " + std::to_string(got) + " want " +
                                         std::to_string(best->second));
                }
            }
        }
    }
    c.log << "    " << cases << " probes (" << with_sector << " with sectors) matched exactly\n";
}

// ---------------------------------------------------------------- c4 ----
// shortest_travel_time equals Floyd-Warshall on 200 random graphs.
void criterion_shortest_paths(Criterion& c) {
    TestRng rng(909090);
    std::size_t graphs = 0;
    for (int round = 0; round < 200 && c.ok; ++round, ++graphs) {
        const std::size_t n = 5 + rng.below(96);  // <= 100 nodes
        RoadNetwork net;
        for (std::size_t i = 0; i < n; ++i) {
            net.add_node(static_cast<NodeId>(i),
                         GeoPoint(rng.uniform(0.0, 0.9), rng.uniform(0.0, 0.9)));
        }
        const std::size_t m = static_cast<std::size_t>((0.5 + rng.unit() * 2.5) * static_cast<double>(n));
        for (std::size_t e = 0; e < m; ++e) {
            const NodeId u = static_cast<NodeId>(rng.below(n));
            const NodeId v = static_cast<NodeId>(rng.below(n));
            if (u != v) net.add_edge(u, v, 1 + static_cast<std::uint32_t>(rng.below(1000)));
        }

        const auto fw = gdrst_test::floyd_warshall(net);
        const auto& ids = net.node_ids();
        for (std::size_t i = 0; i < ids.size() && c.ok; ++i) {
            const auto field = net.shortest_travel_time({ids[i]});
            for (std::size_t j = 0; j < ids.size(); ++j) {
                const auto got = field.seconds(ids[j]);
                const bool reachable = fw[i][j] < gdrst_test::fw_unreachable();
                if (reachable != got.has_value() || (reachable && *got != fw[i][j])) {
                    c.require(false, "distance mismatch in graph " + std::to_string(round));
                    break;
                }
            }
        }
    }
    c.log << "    " << graphs << " graphs, all-pairs exact\n";
}

// ---------------------------------------------------------------- c5 ----
// BBS member set equals the oracle on every instance.
void criterion_bbs_soundness(Criterion& c) {
    std::size_t compared = 0;
    for (std::uint64_t seed = 2000; seed < 2300; ++seed) {
        auto inst = gdrst_test::make_random_instance(seed);
        SkylineResult want, got;
        bool want_error = false, got_error = false;
        try {
            want = oracle_gdrst(inst.net, inst.cat, inst.query);
        } catch (const QueryError&) {
            want_error = true;
        }
        try {
            got = bbs_baseline(inst.net, inst.cat, inst.idx, inst.query);
        } catch (const QueryError&) {
            got_error = true;
        }
        c.require(want_error == got_error, "error behavior diverged at seed " + std::to_string(seed));
        if (want_error || got_error) continue;
        if (!(got.member_ids() == want.member_ids() && got.same_members_and_vectors(want))) {
            c.require(false, "bbs mismatch at seed " + std::to_string(seed));
        }
        ++compared;
    }
    c.log << "    " << compared << " instances, member sets and vectors identical\n";
}

// ---------------------------------------------------- benchmark scale ----
struct BenchScale {
    RoadNetwork net;
    GridIndex idx;
    PoiCatalog cat;
    std::vector<SkylineQuery> queries;
};

SkylineQuery random_bench_query(TestRng& rng, const GeneratorSpec& spec) {
    static const char* kPrimaries[3] = {"hospital", "restaurant", "apartment"};
    static const char* kSecondaries[4] = {"temple", "beach", "hospital", "restaurant"};

    SkylineQuery q;
    q.origin = GeoPoint(rng.uniform(spec.lat_min, spec.lat_max),
                        rng.uniform(spec.lon_min, spec.lon_max));
    q.heading = Heading(rng.unit() * 359.9, rng.chance(0.5) ? 90.0 : 180.0);
    q.primary.category = kPrimaries[rng.below(3)];
    if (rng.chance(0.5)) q.primary.label_filter = {{"LOW COST"}};

    const std::size_t n_secondary = 1 + rng.below(2);
    for (std::size_t s = 0; s < n_secondary; ++s) {
        PreferenceSpec spec2;
        spec2.category = kSecondaries[rng.below(4)];
        if (spec2.category == q.primary.category) spec2.category = "temple";
        q.secondary.push_back(std::move(spec2));
    }
    if (rng.chance(0.6)) {
        q.objectives.push_back(rng.chance(0.5) ? Objective{"price", Sense::Minimize}
                                               : Objective{"rating", Sense::Maximize});
    }
    return q;
}

BenchScale build_bench_scale(const std::string& work_dir, Criterion& c) {
    namespace fs = std::filesystem;
    fs::create_directories(work_dir);
    const std::string nodes = work_dir + "/nodes.csv";
    const std::string edges = work_dir + "/edges.csv";
    const std::string pois = work_dir + "/pois.csv";

    const GeneratorSpec spec = GeneratorSpec::paper_preset();
    const auto summary = generate_dataset_files(spec, nodes, edges, pois);
    c.require(summary.nodes == 21050, "expected 21,050 nodes");
    c.require(summary.edges == 21693, "expected 21,693 edges");

    BenchScale ps;
    ps.net = RoadNetwork::load_files(nodes, edges);
    ps.idx = GridIndex::build(ps.net, 0.05, 0.05);
    ps.cat = PoiCatalog::load_file(pois, ps.net, ps.idx);

    TestRng rng(626262);
    for (int i = 0; i < 100; ++i) ps.queries.push_back(random_bench_query(rng, spec));
    return ps;
}

// ---------------------------------------------------------------- c6 ----
// On the full benchmark preset, GD-RST's median expansions and median CPU time
// both beat the branch-and-bound baseline.
void criterion_bench_trend(BenchScale& ps, Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();

    EngineOptions opt;
    opt.use_cache = false;  // algorithmic comparison: no result reuse
    Engine engine(ps.net, ps.cat, ps.idx, opt);

    std::vector<std::uint64_t> g_exp, g_cpu, b_exp, b_cpu;
    std::size_t answered = 0;
    for (const SkylineQuery& q : ps.queries) {
        SkylineResult g, b;
        try {
            g = engine.execute_query(q).result;
            b = bbs_baseline(ps.net, ps.cat, ps.idx, q);
        } catch (const QueryError&) {
            continue;
        }
        c.require(g.member_ids() == b.member_ids(),
                  "gdrst and bbs disagreed on " + format_query_record(q));
        g_exp.push_back(g.expansions);
        g_cpu.push_back(g.cpu_nanos);
        b_exp.push_back(b.expansions);
        b_cpu.push_back(b.cpu_nanos);
        ++answered;
    }
    c.require(answered >= 90, "too few answerable queries in the workload");

    const std::uint64_t ge = median_u64(g_exp), be = median_u64(b_exp);
    const std::uint64_t gc = median_u64(g_cpu), bc = median_u64(b_cpu);
    c.require(ge < be, "median expansions: gdrst " + std::to_string(ge) + " !< bbs " + std::to_string(be));
    c.require(gc < bc, "median cpu: gdrst " + std::to_string(gc) + " !< bbs " + std::to_string(bc));

    const double elapsed = seconds_since(t0);
    c.require(elapsed < 300.0, "runtime " + std::to_string(elapsed) + "s exceeds 5 minutes");
    c.log << "    " << answered << " queries; median expansions gdrst/bbs = " << ge << "/" << be
          << "; median cpu_nanos = " << gc << "/" << bc << "; " << elapsed << "s\n";
}

// ---------------------------------------------------------------- c7 ----
// Cache trend: hits are free and fast; traffic updates force recomputation
// that matches the oracle at the new revision.
void criterion_cache_trend(BenchScale& ps, Criterion& c) {
    TestRng rng(737373);
    std::vector<SkylineQuery> queries(ps.queries.begin(), ps.queries.begin() + 30);

    Engine engine(ps.net, ps.cat, ps.idx);

    std::vector<std::uint64_t> cold_nanos, hit_nanos;
    std::vector<SkylineResult> cold_results;
    std::vector<bool> answerable(queries.size(), true);
    for (std::size_t i = 0; i < queries.size(); ++i) {
        try {
            const QueryOutcome out = engine.execute_query(queries[i]);
            c.require(!out.cache_hit, "first run must miss");
            cold_nanos.push_back(out.result.cpu_nanos);
            cold_results.push_back(out.result);
        } catch (const QueryError&) {
            answerable[i] = false;
            cold_results.emplace_back();
        }
    }

    for (std::size_t i = 0; i < queries.size(); ++i) {
        if (!answerable[i]) continue;
        const QueryOutcome out = engine.execute_query(queries[i]);
        c.require(out.cache_hit, "repeat run must hit");
        c.require(out.result.expansions == 0, "hit must report zero expansions");
        c.require(out.result.same_members_and_vectors(cold_results[i]),
                  "hit must replay the cold result bit for bit");
        hit_nanos.push_back(out.result.cpu_nanos);
    }
    const std::uint64_t cold_med = median_u64(cold_nanos);
    const std::uint64_t hit_med = median_u64(hit_nanos);
    c.require(hit_med * 10 <= cold_med, "hit median " + std::to_string(hit_med) +
                                            "ns not 10x under cold median " + std::to_string(cold_med) + "ns");

    // A drastic traffic change: 150 random edges get 5x slower.
    std::vector<std::tuple<NodeId, NodeId, std::uint32_t>> all_edges;
    ps.net.for_each_edge([&](NodeId u, NodeId v, std::uint32_t w) { all_edges.emplace_back(u, v, w); });
    TrafficUpdate upd;
    for (int i = 0; i < 150; ++i) {
        const auto& [u, v, w] = all_edges[rng.below(all_edges.size())];
        const std::uint64_t slower = std::min<std::uint64_t>(
            static_cast<std::uint64_t>(w) * 5, std::numeric_limits<std::uint32_t>::max());
        upd.changes.push_back({u, v, static_cast<std::uint32_t>(slower)});
    }
    engine.apply_traffic(upd);

    std::size_t changed = 0, oracle_checked = 0, unchanged_checked = 0;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        if (!answerable[i]) continue;
        const QueryOutcome out = engine.execute_query(queries[i]);
        c.require(!out.cache_hit, "post-update run must recompute");
        c.require(out.result.revision == ps.net.traffic_revision(), "result must carry the new revision");

        const bool did_change = !out.result.same_members_and_vectors(cold_results[i]);
        if (did_change) ++changed;
        // Every changed skyline is verified against the oracle; a few
        // unchanged ones are spot-checked too.
        if (did_change || unchanged_checked < 5) {
            auto lock = ps.net.read_lock();
            const SkylineResult want = oracle_gdrst(ps.net, ps.cat, queries[i]);
            c.require(out.result.member_ids() == want.member_ids() &&
                          out.result.same_members_and_vectors(want),
                      "post-update result diverged from the oracle on q" + std::to_string(i));
            ++oracle_checked;
            if (!did_change) ++unchanged_checked;
        }
    }
    c.log << "    cold/hit median nanos = " << cold_med << "/" << hit_med << "; " << changed
          << " skylines changed after traffic; " << oracle_checked << " oracle-checked\n";
}

// ---------------------------------------------------------------- c8 ----
// Property suites: dominance, skyline structure, geodesy, scaling, cache.
void criterion_properties(Criterion& c) {
    TestRng rng(818181);

    // Dominance: irreflexive, antisymmetric, transitive.
    auto rand_vec = [&](std::size_t dims, std::uint64_t range) {
        CostVector v;
        for (std::size_t d = 0; d < dims; ++d) {
            v.dims.push_back({"d" + std::to_string(d), static_cast<double>(rng.below(range))});
        }
        return v;
    };
    std::size_t transitive_cases = 0;
    for (int i = 0; i < 10000; ++i) {
        const std::size_t dims = 2 + rng.below(3);
        const CostVector a = rand_vec(dims, 10), b = rand_vec(dims, 10), x = rand_vec(dims, 10);
        c.require(!dominates(a, a), "irreflexivity");
        if (dominates(a, b)) c.require(!dominates(b, a), "antisymmetry");
        if (dominates(a, b) && dominates(b, x)) {
            c.require(dominates(a, x), "transitivity");
            ++transitive_cases;
        }
    }
    c.require(transitive_cases > 50, "transitivity undersampled");

    // Skyline completeness/soundness, exhaustive up to 500 vectors.
    for (int round = 0; round < 4; ++round) {
        std::vector<CostVector> vs;
        const std::size_t n = round == 0 ? 500 : 100 + rng.below(400);
        for (std::size_t i = 0; i < n; ++i) {
            CostVector v = rand_vec(3, 25);
            v.owner = "v" + std::to_string(i);
            vs.push_back(std::move(v));
        }
        const auto sky = skyline_of(vs);
        const auto want = gdrst_test::naive_skyline(vs);
        c.require(sky.size() == want.size(), "skyline size vs naive oracle");
        for (std::size_t i = 0; i < sky.size(); ++i) {
            for (std::size_t j = 0; j < sky.size(); ++j) {
                if (i != j) c.require(!dominates(sky[i], sky[j]), "members pairwise non-dominated");
            }
        }
        std::set<std::string> kept;
        for (const auto& m : sky) kept.insert(m.owner);
        for (const auto& v : vs) {
            if (kept.count(v.owner)) continue;
            bool dominated = false;
            for (const auto& m : sky) {
                if (dominates(m, v)) {
                    dominated = true;
                    break;
                }
            }
            c.require(dominated, "excluded vector not dominated");
        }
    }

    // Haversine symmetry, bounds, triangle inequality.
    const double pi_r = 3.141592653589793238462643383279502884 * kEarthRadiusM;
    for (int i = 0; i < 10000; ++i) {
        const GeoPoint a(rng.uniform(-90.0, 90.0), rng.uniform(-180.0, 180.0));
        const GeoPoint b(rng.uniform(-90.0, 90.0), rng.uniform(-180.0, 180.0));
        const GeoPoint m(rng.uniform(-90.0, 90.0), rng.uniform(-180.0, 180.0));
        const double ab = haversine_distance(a, b);
        c.require(ab == haversine_distance(b, a), "haversine symmetry");
        c.require(ab >= 0.0 && ab <= pi_r, "haversine bounds");
        c.require(haversine_distance(a, m) <= ab + haversine_distance(b, m) + 1e-6 * kEarthRadiusM,
                  "triangle inequality");
    }

    // Positive per-dimension scaling leaves membership unchanged.
    for (int round = 0; round < 10; ++round) {
        std::vector<CostVector> vs;
        for (int i = 0; i < 80; ++i) {
            CostVector v = rand_vec(3, 50);
            v.owner = "v" + std::to_string(i);
            vs.push_back(std::move(v));
        }
        auto owners = [](const std::vector<CostVector>& s) {
            std::set<std::string> out;
            for (const auto& v : s) out.insert(v.owner);
            return out;
        };
        const auto before = owners(skyline_of(vs));
        const std::size_t dim = rng.below(3);
        const double factor = 0.1 + rng.unit() * 9.0;
        for (auto& v : vs) v.dims[dim].value *= factor;
        c.require(owners(skyline_of(vs)) == before, "scaling invariance");
    }

    // Cache capacity and LFU/oldest eviction per the contract examples.
    {
        SkylineCache cache(2);
        SkylineResult r;
        cache.store("A", r);
        cache.store("B", r);
        (void)cache.lookup("A", 0);
        (void)cache.lookup("A", 0);
        auto evicted = cache.store("C", r);
        c.require(evicted && *evicted == "B", "LFU evicts the least-hit entry");
        c.require(cache.size() == 2, "capacity bound");

        SkylineCache tie(2);
        tie.store("A", r);
        tie.store("B", r);
        evicted = tie.store("C", r);
        c.require(evicted && *evicted == "A", "hit ties evict the oldest");

        SkylineCache reset(2);
        reset.store("A", r);
        (void)reset.lookup("A", 0);
        c.require(reset.hit_count("A") == 1, "hit count observable");
        reset.store("A", r);
        c.require(reset.hit_count("A") == 0, "re-store resets the hit count");
    }
    c.log << "    dominance, skyline, geodesy, scaling and cache properties held\n";
}

// ---------------------------------------------------------------- c9 ----
// The bundled narrative fixture: the apartment and restaurant answers.
void criterion_fixture_conformance(Criterion& c) {
    RoadNetwork net = RoadNetwork::load_files(kDataDir + "/fixtures/demo_nodes.csv",
                                              kDataDir + "/fixtures/demo_edges.csv");
    GridIndex idx = GridIndex::build(net, 0.01, 0.01);
    PoiCatalog cat = PoiCatalog::load_file(kDataDir + "/fixtures/demo_pois.csv", net, idx);

    std::ifstream in(kDataDir + "/fixtures/demo_queries.txt");
    const auto queries = parse_queries(in);
    c.require(queries.size() == 2, "fixture must carry two queries");

    Engine engine(net, cat, idx);
    const SkylineResult q1 = engine.execute_query(queries[0]).result;
    c.require(q1.member_ids() == std::vector<std::string>{"A3"}, "first query must answer A3");
    const SkylineResult w1 = oracle_gdrst(net, cat, queries[0]);
    c.require(q1.same_members_and_vectors(w1), "first answer must match the fixture oracle");

    const SkylineResult q2 = engine.execute_query(queries[1]).result;
    c.require(q2.member_ids() == std::vector<std::string>{"R1"}, "second query must answer R1");
    const SkylineResult w2 = oracle_gdrst(net, cat, queries[1]);
    c.require(q2.same_members_and_vectors(w2), "second answer must match the fixture oracle");

    c.log << "    both fixture answers exact against the fixture oracle\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::string work_dir = "acceptance_work";
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::strcmp(argv[i], "--work-dir") == 0) work_dir = argv[i + 1];
    }

    struct Entry {
        const char* name;
        Criterion c;
    };
    std::vector<Entry> entries;
    auto report = [&](const char* name, Criterion& c) {
        std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << name << "\n" << c.log.str();
        std::cout.flush();
        entries.push_back({name, std::move(c)});
    };

    {
        Criterion c;
        criterion_oracle_equivalence(c);
        report("criterion 1: oracle equivalence over 1,000 random instances (exact)", c);
    }
    {
        Criterion c;
        criterion_lowcost_filter(c);
        report("criterion 2: low-cost filter reproduces the hospital subset (exact)", c);
    }
    {
        Criterion c;
        criterion_grid_nearest(c);
        report("criterion 3: grid nearest-node equals linear scan on 10,000 cases (exact)", c);
    }
    {
        Criterion c;
        criterion_shortest_paths(c);
        report("criterion 4: Dijkstra equals Floyd-Warshall on 200 graphs (exact)", c);
    }
    {
        Criterion c;
        criterion_bbs_soundness(c);
        report("criterion 5: branch-and-bound baseline equals the oracle (exact)", c);
    }

    {
        Criterion build_c;
        BenchScale ps = build_bench_scale(work_dir, build_c);
        {
            Criterion c;
            c.ok = build_c.ok;
            c.log << build_c.log.str();
            criterion_bench_trend(ps, c);
            report("criterion 6: benchmark-preset medians, gdrst under bbs (trend)", c);
        }
        {
            Criterion c;
            criterion_cache_trend(ps, c);
            report("criterion 7: cache hits free and 10x faster; updates recompute (trend)", c);
        }
    }

    {
        Criterion c;
        criterion_properties(c);
        report("criterion 8: property suites (dominance, skyline, geodesy, cache)", c);
    }
    {
        Criterion c;
        criterion_fixture_conformance(c);
        report("criterion 9: bundled narrative fixture answers (exact)", c);
    }

    std::size_t failed = 0;
    for (const auto& e : entries) {
        if (!e.c.ok) ++failed;
    }
    if (failed == 0) {
        std::cout << "all " << entries.size() << " acceptance criteria passed\n";
        return 0;
    }
    std::cout << failed << " of " << entries.size() << " acceptance criteria FAILED\n";
    return 1;
}
