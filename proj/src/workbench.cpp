#include "gdrst/workbench.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "gdrst/baselines.hpp"
#include "gdrst/text.hpp"

namespace gdrst {

namespace {

struct RunOutcome {
    SkylineResult result;
    bool cache_hit = false;
    bool error = false;
    std::string error_text;
};

RunOutcome run_algo(Engine& engine, Algo algo, const SkylineQuery& q) {
    RunOutcome out;
    try {
        switch (algo) {
            case Algo::Gdrst: {
                QueryOutcome qo = engine.execute_query(q);
                out.result = std::move(qo.result);
                out.cache_hit = qo.cache_hit;
                break;
            }
            case Algo::Bbs: {
                auto lock = engine.network().read_lock();
                out.result = bbs_baseline(engine.network(), engine.catalog(), engine.grid(), q);
                break;
            }
            case Algo::Oracle: {
                auto lock = engine.network().read_lock();
                out.result = oracle_gdrst(engine.network(), engine.catalog(), q);
                break;
            }
        }
    } catch (const QueryError& e) {
        out.error = true;
        out.error_text = e.what();
    }
    return out;
}

std::string member_list(const SkylineResult& r) {
    std::string out;
    for (const auto& m : r.members) {
        if (!out.empty()) out += ' ';
        out += m.owner;
    }
    return out.empty() ? "(empty)" : out;
}

[[noreturn]] void raise_mismatch(const std::string& query_id, const SkylineQuery& q,
                                 const std::vector<std::pair<std::string, std::string>>& views) {
    std::ostringstream out;
    out << "skyline mismatch on " << query_id << "\n"
        << "query: " << format_query_record(q) << "\n";
    for (const auto& [algo, members] : views) {
        out << "  " << algo << ": " << members << "\n";
    }
    throw MismatchError(out.str());
}

}  // namespace

std::string algo_name(Algo a) {
    switch (a) {
        case Algo::Gdrst: return "gdrst";
        case Algo::Bbs: return "bbs";
        case Algo::Oracle: return "oracle";
    }
    return "?";
}

Algo parse_algo(const std::string& name) {
    if (name == "gdrst") return Algo::Gdrst;
    if (name == "bbs") return Algo::Bbs;
    if (name == "oracle") return Algo::Oracle;
    throw DataError("unknown algorithm: " + name + " (expected gdrst, bbs or oracle)");
}

std::vector<BenchmarkRecord> run_benchmark(Engine& engine, const std::vector<SkylineQuery>& queries,
                                           const BenchOptions& raw_opts) {
    BenchOptions opts = raw_opts;
    if (opts.algorithms.empty()) throw DataError("run_benchmark: no algorithms selected");
    if (opts.repetitions < 1) throw DataError("run_benchmark: repetitions must be >= 1");
    // Comparison mode is anchored to the ground truth: oracle rows are
    // always present in its output.
    if (opts.compare &&
        std::find(opts.algorithms.begin(), opts.algorithms.end(), Algo::Oracle) ==
            opts.algorithms.end()) {
        opts.algorithms.push_back(Algo::Oracle);
    }

    std::vector<BenchmarkRecord> rows;
    // Sequential member sets per query, for comparison and the parallel check.
    std::vector<std::vector<std::string>> gdrst_members(queries.size());
    std::vector<char> gdrst_errored(queries.size(), 0);

    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        const std::string query_id = "q" + std::to_string(qi);
        std::vector<std::pair<std::string, std::string>> views;
        std::vector<const SkylineResult*> compare_results;
        std::vector<RunOutcome> outcomes;
        outcomes.reserve(opts.algorithms.size());

        for (Algo algo : opts.algorithms) {
            for (int rep = 0; rep < opts.repetitions; ++rep) {
                RunOutcome out = run_algo(engine, algo, queries[qi]);
                BenchmarkRecord row;
                row.query_id = query_id;
                row.algorithm = algo_name(algo);
                row.rep = rep;
                row.status = out.error ? "error" : "ok";
                if (!out.error) {
                    row.expansions = out.result.expansions;
                    row.cpu_nanos = out.result.cpu_nanos;
                    row.result_size = out.result.members.size();
                    row.cache_hit = out.cache_hit;
                    row.revision = out.result.revision;
                }
                rows.push_back(std::move(row));
                if (rep == 0) {
                    if (algo == Algo::Gdrst) {
                        gdrst_errored[qi] = out.error ? 1 : 0;
                        if (!out.error) gdrst_members[qi] = out.result.member_ids();
                    }
                    outcomes.push_back(std::move(out));
                }
            }
        }

        if (opts.compare && opts.algorithms.size() > 1) {
            bool mismatch = false;
            for (std::size_t a = 0; a < outcomes.size(); ++a) {
                views.emplace_back(algo_name(opts.algorithms[a]),
                                   outcomes[a].error ? "error: " + outcomes[a].error_text
                                                     : member_list(outcomes[a].result));
                if (a == 0) continue;
                if (outcomes[a].error != outcomes[0].error) mismatch = true;
                if (!outcomes[a].error && !outcomes[0].error &&
                    outcomes[a].result.member_ids() != outcomes[0].result.member_ids()) {
                    mismatch = true;
                }
            }
            if (mismatch) raise_mismatch(query_id, queries[qi], views);
        }
    }

    if (opts.parallel) {
        // Concurrent replay with caching off; member sets must match the
        // sequential pass exactly.
        EngineOptions popt = engine.options();
        popt.use_cache = false;
        Engine parallel_engine(engine.network(), engine.catalog(), engine.grid(), popt);

        std::vector<std::vector<std::string>> par_members(queries.size());
        std::vector<char> par_errored(queries.size(), 0);
        std::atomic<std::size_t> next{0};
        const unsigned nthreads = std::max(2u, std::min(8u, std::thread::hardware_concurrency()));
        std::vector<std::thread> workers;
        for (unsigned t = 0; t < nthreads; ++t) {
            workers.emplace_back([&]() {
                while (true) {
                    const std::size_t qi = next.fetch_add(1);
                    if (qi >= queries.size()) return;
                    try {
                        par_members[qi] = parallel_engine.execute_query(queries[qi]).result.member_ids();
                    } catch (const QueryError&) {
                        par_errored[qi] = 1;
                    }
                }
            });
        }
        for (auto& w : workers) w.join();

        for (std::size_t qi = 0; qi < queries.size(); ++qi) {
            if (par_errored[qi] != gdrst_errored[qi] ||
                (!par_errored[qi] && par_members[qi] != gdrst_members[qi])) {
                throw MismatchError("parallel replay diverged from sequential run on q" +
                                    std::to_string(qi));
            }
        }
    }

    return rows;
}

TrafficSchedule parse_schedule(std::istream& in) {
    TrafficSchedule schedule;
    LineReader reader(in);
    while (auto line = reader.next()) {
        const std::size_t colon = line->find(':');
        if (colon == std::string::npos) {
            throw DataError("schedule line " + std::to_string(reader.line_number()) +
                            ": expected `<after_query_index>: u,v,t[;u,v,t...]`");
        }
        auto idx = parse_int64(std::string_view(*line).substr(0, colon));
        if (!idx || *idx < 0) {
            throw DataError("schedule line " + std::to_string(reader.line_number()) +
                            ": bad query index");
        }
        try {
            schedule.emplace_back(static_cast<std::size_t>(*idx),
                                  parse_traffic_update(line->substr(colon + 1)));
        } catch (const DataError& e) {
            throw DataError("schedule line " + std::to_string(reader.line_number()) + ": " + e.what());
        }
    }
    std::stable_sort(schedule.begin(), schedule.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    return schedule;
}

std::vector<CacheBenchRecord> cache_experiment(Engine& engine,
                                               const std::vector<SkylineQuery>& queries,
                                               const TrafficSchedule& schedule) {
    std::vector<CacheBenchRecord> rows;
    std::size_t next_update = 0;
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        CacheBenchRecord row;
        row.query_index = qi;
        row.query_id = "q" + std::to_string(qi);
        QueryOutcome out = engine.execute_query(queries[qi]);
        row.cache_hit = out.cache_hit;
        row.expansions = out.result.expansions;
        row.cpu_nanos = out.result.cpu_nanos;
        row.result_size = out.result.members.size();
        row.revision = out.result.revision;
        rows.push_back(std::move(row));

        while (next_update < schedule.size() && schedule[next_update].first == qi) {
            engine.apply_traffic(schedule[next_update].second);
            ++next_update;
        }
    }
    return rows;
}

void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRecord>& rows) {
    out << "query_id,algorithm,rep,expansions,cpu_nanos,result_size,cache_hit,revision,status\n";
    for (const BenchmarkRecord& r : rows) {
        out << r.query_id << ',' << r.algorithm << ',' << r.rep << ',' << r.expansions << ','
            << r.cpu_nanos << ',' << r.result_size << ',' << (r.cache_hit ? "true" : "false") << ','
            << r.revision << ',' << r.status << '\n';
    }
}

void write_cache_csv(std::ostream& out, const std::vector<CacheBenchRecord>& rows) {
    out << "query_index,query_id,cache_hit,expansions,cpu_nanos,result_size,revision\n";
    for (const CacheBenchRecord& r : rows) {
        out << r.query_index << ',' << r.query_id << ',' << (r.cache_hit ? "true" : "false") << ','
            << r.expansions << ',' << r.cpu_nanos << ',' << r.result_size << ',' << r.revision
            << '\n';
    }
}

}  // namespace gdrst
