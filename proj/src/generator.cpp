#include "gdrst/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gdrst/errors.hpp"
#include "gdrst/geo.hpp"

namespace gdrst {

namespace {

// mt19937_64 drives everything; doubles and bounded ints are derived by
// hand so the byte stream does not depend on library distribution details.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % n;
    }

private:
    std::mt19937_64 gen_;
};

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);  // root = smaller index, deterministic
        parent[b] = a;
        return true;
    }
};

struct CandidateEdge {
    double length_m;
    std::uint32_t u, v;  // u < v

    bool operator<(const CandidateEdge& o) const {
        if (length_m != o.length_m) return length_m < o.length_m;
        if (u != o.u) return u < o.u;
        return v < o.v;
    }
};

// Uniform bucket grid for approximate nearest-neighbor queries during
// candidate-edge construction.
class BucketGrid {
public:
    BucketGrid(const std::vector<GeoPoint>& pts, double lat_min, double lat_max, double lon_min,
               double lon_max)
        : pts_(pts), lat0_(lat_min), lon0_(lon_min) {
        const std::size_t n = std::max<std::size_t>(pts.size(), 1);
        const double side = std::sqrt(std::max(1e-12, (lat_max - lat_min) * (lon_max - lon_min) /
                                                          static_cast<double>(n)));
        cell_ = std::max(side, 1e-9);
        for (std::uint32_t i = 0; i < pts.size(); ++i) {
            buckets_[key_of(pts[i])].push_back(i);
        }
    }

    // k nearest neighbors of pts[i] (excluding i itself), optionally
    // restricted by a predicate; expands bucket rings until provably done.
    template <typename Pred>
    std::vector<std::pair<double, std::uint32_t>> nearest(std::uint32_t i, std::size_t k,
                                                          Pred admit) const {
        const GeoPoint& p = pts_[i];
        const auto [crow, ccol] = cell_coords(p);
        std::vector<std::pair<double, std::uint32_t>> found;

        // ~111.32 km per degree: conservative meters-per-degree floor used
        // to turn ring counts into a distance bound.
        const double meters_per_cell = cell_ * 111000.0;

        for (std::int64_t r = 0;; ++r) {
            if (!found.empty() && found.size() >= k) {
                std::sort(found.begin(), found.end());
                const double kth = found[k - 1].first;
                if (r >= 2 && kth < static_cast<double>(r - 1) * meters_per_cell * 0.9) break;
            }
            bool any_bucket = false;
            auto visit = [&](std::int64_t row, std::int64_t col) {
                auto it = buckets_.find((row << 32) ^ (col & 0xffffffffLL));
                if (it == buckets_.end()) return;
                any_bucket = true;
                for (std::uint32_t j : it->second) {
                    if (j == i || !admit(j)) continue;
                    found.emplace_back(haversine_distance(p, pts_[j]), j);
                }
            };
            if (r == 0) {
                visit(crow, ccol);
            } else {
                for (std::int64_t c = ccol - r; c <= ccol + r; ++c) {
                    visit(crow + r, c);
                    visit(crow - r, c);
                }
                for (std::int64_t w = crow - r + 1; w <= crow + r - 1; ++w) {
                    visit(w, ccol - r);
                    visit(w, ccol + r);
                }
            }
            // No buckets left anywhere beyond the grid extent: stop.
            if (r > 0 && !any_bucket && static_cast<double>(r) * cell_ > 360.0) break;
            if (r > 4 && !any_bucket && found.size() >= k) break;
            if (r > 8192) break;  // safety valve for degenerate inputs
        }
        std::sort(found.begin(), found.end());
        if (found.size() > k) found.resize(k);
        return found;
    }

private:
    std::pair<std::int64_t, std::int64_t> cell_coords(const GeoPoint& p) const {
        return {static_cast<std::int64_t>(std::floor((p.lat() - lat0_) / cell_)),
                static_cast<std::int64_t>(std::floor((p.lon() - lon0_) / cell_))};
    }
    std::int64_t key_of(const GeoPoint& p) const {
        const auto [r, c] = cell_coords(p);
        return (r << 32) ^ (c & 0xffffffffLL);
    }

    const std::vector<GeoPoint>& pts_;
    double lat0_, lon0_, cell_ = 1.0;
    std::unordered_map<std::int64_t, std::vector<std::uint32_t>> buckets_;
};

std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.7f", v);
    return buf;
}

std::string fmt_fixed(double v, int digits) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

}  // namespace

GeneratorSpec GeneratorSpec::paper_preset() {
    GeneratorSpec spec;
    spec.node_count = 21050;
    spec.edge_factor = 21693.0 / 21050.0;
    spec.lat_min = 32.5;
    spec.lat_max = 37.5;
    spec.lon_min = -119.0;
    spec.lon_max = -117.0;
    spec.poi_counts = {
        {"apartment", 250}, {"beach", 120}, {"hospital", 300}, {"restaurant", 400}, {"temple", 150},
    };
    spec.seed = 1729;
    return spec;
}

DatasetSummary generate_dataset(const GeneratorSpec& spec, std::ostream& nodes_out,
                                std::ostream& edges_out, std::ostream& pois_out) {
    const std::size_t n = spec.node_count;
    if (n == 0) throw DataError("generator: node_count must be positive");
    if (spec.lat_min >= spec.lat_max || spec.lon_min >= spec.lon_max) {
        throw DataError("generator: empty bounding box");
    }
    const std::uint64_t target_edges =
        static_cast<std::uint64_t>(std::llround(spec.edge_factor * static_cast<double>(n)));
    const std::uint64_t max_pairs = n * (n - 1) / 2;
    if (n > 1 && target_edges < n - 1) {
        throw DataError("generator: edge budget below spanning requirement");
    }
    if (target_edges > max_pairs) {
        throw DataError("generator: edge budget exceeds possible undirected pairs");
    }

    Rng rng(spec.seed);

    // Nodes: uniform in the bbox. Coordinates round-trip through the same
    // fixed-precision text as the output files so snapping is exact.
    std::vector<GeoPoint> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lat = spec.lat_min + rng.unit() * (spec.lat_max - spec.lat_min);
        const double lon = spec.lon_min + rng.unit() * (spec.lon_max - spec.lon_min);
        pts.emplace_back(std::stod(fmt_coord(lat)), std::stod(fmt_coord(lon)));
    }

    BucketGrid grid(pts, spec.lat_min, spec.lat_max, spec.lon_min, spec.lon_max);

    // Candidate edges: each node to its k nearest neighbors.
    const std::size_t k = std::min<std::size_t>(
        n - 1, std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(spec.edge_factor)) * 2 + 4));
    std::vector<CandidateEdge> candidates;
    {
        std::unordered_set<std::uint64_t> seen;
        for (std::uint32_t i = 0; i < n; ++i) {
            for (const auto& [d, j] : grid.nearest(i, k, [](std::uint32_t) { return true; })) {
                const std::uint32_t a = std::min(i, j), b = std::max(i, j);
                if (seen.insert((static_cast<std::uint64_t>(a) << 32) | b).second) {
                    candidates.push_back({d, a, b});
                }
            }
        }
    }
    std::sort(candidates.begin(), candidates.end());

    // Spanning forest from the shortest candidates, then explicit bridges
    // for any components the neighbor graph left apart.
    UnionFind uf(n);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<char> used(candidates.size(), 0);
    std::size_t components = n;
    for (std::size_t c = 0; c < candidates.size() && components > 1; ++c) {
        if (uf.unite(candidates[c].u, candidates[c].v)) {
            edges.emplace_back(candidates[c].u, candidates[c].v);
            used[c] = 1;
            --components;
        }
    }
    while (components > 1) {
        // Smallest-rooted component joins the nearest foreign node.
        std::vector<std::vector<std::uint32_t>> groups(n);
        for (std::uint32_t i = 0; i < n; ++i) groups[uf.find(i)].push_back(i);
        std::uint32_t comp_root = 0;
        std::size_t comp_size = n + 1;
        for (std::uint32_t r = 0; r < n; ++r) {
            if (!groups[r].empty() && groups[r].size() < comp_size) {
                comp_root = r;
                comp_size = groups[r].size();
            }
        }
        double best_d = std::numeric_limits<double>::infinity();
        std::uint32_t best_a = 0, best_b = 0;
        for (std::uint32_t a : groups[comp_root]) {
            auto near = grid.nearest(a, 1, [&](std::uint32_t j) { return uf.find(j) != comp_root; });
            if (!near.empty() && near.front().first < best_d) {
                best_d = near.front().first;
                best_a = a;
                best_b = near.front().second;
            }
        }
        if (!std::isfinite(best_d)) throw DataError("generator: cannot connect components");
        edges.emplace_back(std::min(best_a, best_b), std::max(best_a, best_b));
        uf.unite(best_a, best_b);
        --components;
    }
    if (edges.size() > target_edges) {
        throw DataError("generator: edge budget below spanning requirement");
    }

    // Fill the remaining budget with the shortest unused candidates.
    {
        std::unordered_set<std::uint64_t> present;
        for (const auto& [a, b] : edges) present.insert((static_cast<std::uint64_t>(a) << 32) | b);
        for (std::size_t c = 0; c < candidates.size() && edges.size() < target_edges; ++c) {
            if (used[c]) continue;
            const std::uint64_t key =
                (static_cast<std::uint64_t>(candidates[c].u) << 32) | candidates[c].v;
            if (present.insert(key).second) edges.emplace_back(candidates[c].u, candidates[c].v);
        }
    }
    if (edges.size() != target_edges) {
        throw DataError("generator: neighbor candidates exhausted before the edge budget; "
                        "raise node_count or lower edge_factor");
    }

    std::sort(edges.begin(), edges.end());

    // Travel times: great-circle length over a uniform speed in [5, 25] m/s,
    // rounded up to whole seconds (always >= 1).
    nodes_out << "# road network nodes: id,lat,lon\n";
    for (std::size_t i = 0; i < n; ++i) {
        nodes_out << i << ',' << fmt_coord(pts[i].lat()) << ',' << fmt_coord(pts[i].lon()) << '\n';
    }
    edges_out << "# road network edges: u,v,travel_time_s\n";
    for (const auto& [a, b] : edges) {
        const double len = haversine_distance(pts[a], pts[b]);
        const double speed = 5.0 + rng.unit() * 20.0;
        const std::uint64_t secs = std::max<std::uint64_t>(
            1, static_cast<std::uint64_t>(std::ceil(len / speed)));
        edges_out << a << ',' << b << ',' << secs << '\n';
    }

    // POIs at random nodes, with price/rating attributes and a cost class.
    static const char* kCostClasses[3] = {"LOW COST", "MEDIUM", "HIGH"};
    DatasetSummary summary{n, edges.size(), 0};
    pois_out << "# pois: poi_id,lat,lon,category,key=value...\n";
    for (const auto& [category, count] : spec.poi_counts) {
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t node = rng.below(n);
            const double price = 20.0 + rng.unit() * 480.0;
            const double rating = 1.0 + rng.unit() * 4.0;
            const char* cls = kCostClasses[rng.below(3)];
            pois_out << category << '_' << i << ',' << fmt_coord(pts[node].lat()) << ','
                     << fmt_coord(pts[node].lon()) << ',' << category << ",price="
                     << fmt_fixed(price, 2) << ",rating=" << fmt_fixed(rating, 1)
                     << ",cost_class=" << cls << '\n';
            ++summary.pois;
        }
    }
    return summary;
}

DatasetSummary generate_dataset_files(const GeneratorSpec& spec, const std::string& nodes_path,
                                      const std::string& edges_path, const std::string& pois_path) {
    std::ofstream nodes(nodes_path);
    if (!nodes) throw DataError("cannot write " + nodes_path);
    std::ofstream edges(edges_path);
    if (!edges) throw DataError("cannot write " + edges_path);
    std::ofstream pois(pois_path);
    if (!pois) throw DataError("cannot write " + pois_path);
    return generate_dataset(spec, nodes, edges, pois);
}

}  // namespace gdrst
