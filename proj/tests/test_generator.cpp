#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "gdrst/generator.hpp"
#include "gdrst/grid_index.hpp"
#include "gdrst/poi_catalog.hpp"
#include "gdrst/road_network.hpp"

using gdrst::GeneratorSpec;
using gdrst::generate_dataset;

namespace {

struct Generated {
    std::string nodes, edges, pois;
    gdrst::DatasetSummary summary;
};

Generated run(const GeneratorSpec& spec) {
    std::ostringstream n, e, p;
    Generated g;
    g.summary = generate_dataset(spec, n, e, p);
    g.nodes = n.str();
    g.edges = e.str();
    g.pois = p.str();
    return g;
}

GeneratorSpec small_spec() {
    GeneratorSpec spec;
    spec.node_count = 400;
    spec.edge_factor = 1.3;
    spec.poi_counts = {{"hospital", 12}, {"restaurant", 20}};
    spec.seed = 7;
    return spec;
}

// Connectivity check via union-find over the emitted edge list.
bool connected(const gdrst::RoadNetwork& net) {
    if (net.node_count() == 0) return false;
    std::map<gdrst::NodeId, gdrst::NodeId> parent;
    for (gdrst::NodeId id : net.node_ids()) parent[id] = id;
    std::function<gdrst::NodeId(gdrst::NodeId)> find = [&](gdrst::NodeId x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    net.for_each_edge([&](gdrst::NodeId u, gdrst::NodeId v, std::uint32_t) {
        parent[find(u)] = find(v);
    });
    const gdrst::NodeId root = find(net.node_ids().front());
    for (gdrst::NodeId id : net.node_ids()) {
        if (find(id) != root) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("generator: identical seeds produce identical bytes") {
    const Generated a = run(small_spec());
    const Generated b = run(small_spec());
    CHECK(a.nodes == b.nodes);
    CHECK(a.edges == b.edges);
    CHECK(a.pois == b.pois);

    GeneratorSpec other = small_spec();
    other.seed = 8;
    const Generated c = run(other);
    CHECK(a.nodes != c.nodes);
}

TEST_CASE("generator: output loads, has the requested shape, and is connected") {
    const GeneratorSpec spec = small_spec();
    const Generated g = run(spec);

    std::istringstream nodes(g.nodes), edges(g.edges);
    const gdrst::RoadNetwork net = gdrst::RoadNetwork::load(nodes, edges);
    CHECK(net.node_count() == 400);
    CHECK(net.edge_count() == static_cast<std::size_t>(std::llround(1.3 * 400)));
    CHECK(g.summary.edges == net.edge_count());
    CHECK(connected(net));

    // Every weight is a whole positive second.
    net.for_each_edge([](gdrst::NodeId, gdrst::NodeId, std::uint32_t w) { CHECK(w >= 1); });

    // POIs parse and snap onto their own nodes (they sit at node coords).
    const auto idx = gdrst::GridIndex::build(net, 0.05, 0.05);
    std::istringstream pois(g.pois);
    const auto cat = gdrst::PoiCatalog::load(pois, net, idx);
    CHECK(cat.size() == 32);
    for (const auto& [id, poi] : cat.pois()) {
        CHECK(net.node_location(poi.snapped_node) == poi.location);
        CHECK(poi.attributes.count("price") == 1);
        CHECK(poi.attributes.count("rating") == 1);
        CHECK(poi.labels.count("cost_class") == 1);
    }
}

TEST_CASE("generator: infeasible budgets are rejected") {
    GeneratorSpec spec = small_spec();
    spec.node_count = 10;
    spec.edge_factor = 0.5;  // 5 edges < 9 needed to span
    CHECK_THROWS_AS(run(spec), gdrst::DataError);

    spec.edge_factor = 10.0;  // 100 edges > C(10,2)
    CHECK_THROWS_AS(run(spec), gdrst::DataError);

    spec.node_count = 0;
    CHECK_THROWS_AS(run(spec), gdrst::DataError);
}

TEST_CASE("generator: paper preset shape") {
    const GeneratorSpec spec = GeneratorSpec::paper_preset();
    CHECK(spec.node_count == 21050);
    CHECK(std::llround(spec.edge_factor * static_cast<double>(spec.node_count)) == 21693);
}
