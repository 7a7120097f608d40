// gdrst: road-network skyline workbench.
//
// Subcommands:
//   gen         generate a synthetic dataset (nodes/edges/pois files)
//   query       answer a single query against a dataset
//   bench       replay a query workload per algorithm, emit CSV metrics
//   cache-bench replay a workload with the result cache on, interleaving
//               scheduled traffic updates
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 comparison mismatch.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gdrst/baselines.hpp"
#include "gdrst/engine.hpp"
#include "gdrst/generator.hpp"
#include "gdrst/workbench.hpp"

namespace {

struct DatasetArgs {
    std::string nodes_file;
    std::string edges_file;
    std::string pois_file;
    double cell_size = 0.05;
};

void add_dataset_flags(CLI::App* cmd, DatasetArgs& args) {
    cmd->add_option("--nodes-file", args.nodes_file, "nodes file (node_id,lat,lon)")->required();
    cmd->add_option("--edges-file", args.edges_file, "edges file (u,v,travel_time_s)")->required();
    cmd->add_option("--pois-file", args.pois_file, "pois file (poi_id,lat,lon,category,...)")->required();
    cmd->add_option("--cell-size", args.cell_size, "grid cell size in degrees")
        ->check(CLI::PositiveNumber);
}

struct LoadedDataset {
    gdrst::RoadNetwork net;
    gdrst::GridIndex idx;
    gdrst::PoiCatalog cat;
};

LoadedDataset load_dataset(const DatasetArgs& args) {
    LoadedDataset ds;
    ds.net = gdrst::RoadNetwork::load_files(args.nodes_file, args.edges_file);
    ds.idx = gdrst::GridIndex::build(ds.net, args.cell_size, args.cell_size);
    ds.cat = gdrst::PoiCatalog::load_file(args.pois_file, ds.net, ds.idx);
    return ds;
}

std::vector<gdrst::SkylineQuery> load_queries(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw gdrst::DataError("cannot open queries file: " + path);
    return gdrst::parse_queries(in);
}

void print_result(const gdrst::SkylineResult& result, bool cache_hit) {
    for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "# revision=" << result.revision << " expansions=" << result.expansions
              << " cpu_nanos=" << result.cpu_nanos << " cache_hit=" << (cache_hit ? "true" : "false")
              << " members=" << result.members.size() << "\n";
    for (const auto& m : result.members) {
        std::cout << m.owner;
        for (const auto& d : m.dims) std::cout << ' ' << d.name << '=' << d.value;
        std::cout << "\n";
    }
}

std::map<std::string, std::size_t> parse_poi_counts(const std::string& text) {
    std::map<std::string, std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos) {
            throw gdrst::DataError("--pois expects category:count[,category:count...]");
        }
        const std::string category = item.substr(0, colon);
        const long long count = std::stoll(item.substr(colon + 1));
        if (category.empty() || count < 0) throw gdrst::DataError("bad --pois entry: " + item);
        out[category] = static_cast<std::size_t>(count);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"road-network skyline workbench"};
    app.require_subcommand(1);

    // --- gen ---
    auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
    std::string out_dir = ".";
    std::size_t gen_nodes = 1000;
    double gen_edge_factor = 1.2;
    std::vector<double> gen_bbox;
    std::string gen_pois = "hospital:40,restaurant:60,temple:20,beach:15,apartment:30";
    std::uint64_t gen_seed = 1;
    std::string gen_preset;
    gen->add_option("--out", out_dir, "output directory")->required();
    gen->add_option("--nodes", gen_nodes, "node count");
    gen->add_option("--edge-factor", gen_edge_factor, "edges = round(factor * nodes)");
    gen->add_option("--bbox", gen_bbox, "lat_min lat_max lon_min lon_max")->expected(4);
    gen->add_option("--pois", gen_pois, "category:count[,category:count...]");
    gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_option("--preset", gen_preset,
                    "named configuration; `paper` = 21,050 nodes / 21,693 edges")
        ->check(CLI::IsMember({"paper"}));

    // --- query ---
    auto* query_cmd = app.add_subcommand("query", "answer a single query");
    DatasetArgs query_ds;
    add_dataset_flags(query_cmd, query_ds);
    std::string query_record;
    std::string query_algo = "gdrst";
    std::size_t query_cache_capacity = 128;
    query_cmd->add_option("--query", query_record, "query record (see README grammar)")->required();
    query_cmd->add_option("--algorithm", query_algo, "gdrst, bbs or oracle");
    query_cmd->add_option("--cache-capacity", query_cache_capacity, "result cache capacity");

    // --- bench ---
    auto* bench = app.add_subcommand("bench", "replay a workload and emit CSV metrics");
    DatasetArgs bench_ds;
    add_dataset_flags(bench, bench_ds);
    std::string bench_queries;
    std::string bench_algos = "gdrst";
    std::string bench_csv;
    int bench_reps = 1;
    bool bench_compare = false;
    bool bench_cache = false;
    bool bench_parallel = false;
    std::size_t bench_cache_capacity = 128;
    bench->add_option("--queries-file", bench_queries, "query records, one per line")->required();
    bench->add_option("--algorithms", bench_algos, "comma list of gdrst,bbs,oracle");
    bench->add_option("--reps", bench_reps, "repetitions per (query, algorithm)")
        ->check(CLI::PositiveNumber);
    bench->add_option("--csv", bench_csv, "output CSV path (default: stdout)");
    bench->add_flag("--compare", bench_compare, "assert member-set equality across algorithms");
    bench->add_flag("--cache", bench_cache, "enable the gdrst result cache during the replay");
    bench->add_flag("--parallel", bench_parallel,
                    "also replay concurrently (cache off) and assert identical member sets");
    bench->add_option("--cache-capacity", bench_cache_capacity, "result cache capacity");

    // --- cache-bench ---
    auto* cbench = app.add_subcommand("cache-bench", "replay a workload against the result cache");
    DatasetArgs cbench_ds;
    add_dataset_flags(cbench, cbench_ds);
    std::string cbench_queries;
    std::string cbench_schedule;
    std::string cbench_csv;
    std::size_t cbench_capacity = 128;
    cbench->add_option("--queries-file", cbench_queries, "query records, one per line")->required();
    cbench->add_option("--schedule", cbench_schedule,
                       "traffic schedule file: `<after_query_index>: u,v,t[;...]` lines");
    cbench->add_option("--csv", cbench_csv, "output CSV path (default: stdout)");
    cbench->add_option("--capacity", cbench_capacity, "result cache capacity");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) {
            const bool paper = gen_preset == "paper";
            gdrst::GeneratorSpec spec;
            if (paper) {
                spec = gdrst::GeneratorSpec::paper_preset();
            }
            if (gen->count("--nodes")) spec.node_count = gen_nodes;
            if (gen->count("--edge-factor")) spec.edge_factor = gen_edge_factor;
            if (gen->count("--seed")) spec.seed = gen_seed;
            if (gen->count("--pois") || !paper) spec.poi_counts = parse_poi_counts(gen_pois);
            if (!gen_bbox.empty()) {
                spec.lat_min = gen_bbox[0];
                spec.lat_max = gen_bbox[1];
                spec.lon_min = gen_bbox[2];
                spec.lon_max = gen_bbox[3];
            }
            std::filesystem::create_directories(out_dir);
            const auto summary = gdrst::generate_dataset_files(
                spec, out_dir + "/nodes.csv", out_dir + "/edges.csv", out_dir + "/pois.csv");
            std::cout << "wrote " << summary.nodes << " nodes, " << summary.edges << " edges, "
                      << summary.pois << " pois to " << out_dir << "\n";
            return 0;
        }

        if (query_cmd->parsed()) {
            LoadedDataset ds = load_dataset(query_ds);
            const gdrst::SkylineQuery q = gdrst::parse_query_record(query_record);
            const gdrst::Algo algo = gdrst::parse_algo(query_algo);
            if (algo == gdrst::Algo::Gdrst) {
                gdrst::EngineOptions opt;
                opt.cache_capacity = query_cache_capacity;
                gdrst::Engine engine(ds.net, ds.cat, ds.idx, opt);
                const gdrst::QueryOutcome out = engine.execute_query(q);
                print_result(out.result, out.cache_hit);
            } else if (algo == gdrst::Algo::Bbs) {
                print_result(gdrst::bbs_baseline(ds.net, ds.cat, ds.idx, q), false);
            } else {
                print_result(gdrst::oracle_gdrst(ds.net, ds.cat, q), false);
            }
            return 0;
        }

        if (bench->parsed()) {
            LoadedDataset ds = load_dataset(bench_ds);
            const auto queries = load_queries(bench_queries);

            gdrst::EngineOptions opt;
            opt.cache_capacity = bench_cache_capacity;
            opt.use_cache = bench_cache;
            gdrst::Engine engine(ds.net, ds.cat, ds.idx, opt);

            gdrst::BenchOptions bopts;
            bopts.algorithms.clear();
            std::stringstream ss(bench_algos);
            std::string name;
            while (std::getline(ss, name, ',')) {
                if (!name.empty()) bopts.algorithms.push_back(gdrst::parse_algo(name));
            }
            bopts.repetitions = bench_reps;
            bopts.compare = bench_compare;
            bopts.parallel = bench_parallel;

            std::vector<gdrst::BenchmarkRecord> rows;
            try {
                rows = gdrst::run_benchmark(engine, queries, bopts);
            } catch (const gdrst::MismatchError& e) {
                // Reproducer: the dataset paths plus the failing record are
                // everything needed to replay the disagreement.
                const std::string repro_path =
                    (bench_csv.empty() ? std::string("mismatch_repro.txt")
                                       : bench_csv + ".mismatch_repro.txt");
                std::ofstream repro(repro_path);
                repro << "# comparison mismatch reproducer\n"
                      << "nodes_file: " << bench_ds.nodes_file << "\n"
                      << "edges_file: " << bench_ds.edges_file << "\n"
                      << "pois_file: " << bench_ds.pois_file << "\n"
                      << "cell_size: " << bench_ds.cell_size << "\n"
                      << e.what();
                std::cerr << "comparison mismatch (reproducer written to " << repro_path << "):\n"
                          << e.what() << "\n";
                return 3;
            }
            if (bench_csv.empty()) {
                gdrst::write_benchmark_csv(std::cout, rows);
            } else {
                std::ofstream out(bench_csv);
                if (!out) throw gdrst::DataError("cannot write " + bench_csv);
                gdrst::write_benchmark_csv(out, rows);
            }
            return 0;
        }

        if (cbench->parsed()) {
            LoadedDataset ds = load_dataset(cbench_ds);
            const auto queries = load_queries(cbench_queries);
            gdrst::TrafficSchedule schedule;
            if (!cbench_schedule.empty()) {
                std::ifstream in(cbench_schedule);
                if (!in) throw gdrst::DataError("cannot open schedule file: " + cbench_schedule);
                schedule = gdrst::parse_schedule(in);
            }
            gdrst::EngineOptions opt;
            opt.cache_capacity = cbench_capacity;
            gdrst::Engine engine(ds.net, ds.cat, ds.idx, opt);
            const auto rows = gdrst::cache_experiment(engine, queries, schedule);
            if (cbench_csv.empty()) {
                gdrst::write_cache_csv(std::cout, rows);
            } else {
                std::ofstream out(cbench_csv);
                if (!out) throw gdrst::DataError("cannot write " + cbench_csv);
                gdrst::write_cache_csv(out, rows);
            }
            return 0;
        }
    } catch (const gdrst::MismatchError& e) {
        std::cerr << "comparison mismatch:\n" << e.what() << "\n";
        return 3;
    } catch (const gdrst::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gdrst::QueryError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
