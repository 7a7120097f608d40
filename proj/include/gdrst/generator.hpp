#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>

namespace gdrst {

/**
 * Parameters for the synthetic dataset generator: a connected random
 * geometric graph with travel-time weights plus categorized POIs placed at
 * network nodes. Output is byte-identical for identical specs.
 */
struct GeneratorSpec {
    std::size_t node_count = 1000;
    double edge_factor = 1.2;  // total edges = round(edge_factor * node_count)
    double lat_min = 32.5, lat_max = 37.5;
    double lon_min = -119.0, lon_max = -117.0;
    std::map<std::string, std::size_t> poi_counts;
    std::uint64_t seed = 1;

    // The 21,050-node / 21,693-edge benchmark configuration.
    static GeneratorSpec paper_preset();
};

struct DatasetSummary {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t pois = 0;
};

DatasetSummary generate_dataset(const GeneratorSpec& spec, std::ostream& nodes_out,
                                std::ostream& edges_out, std::ostream& pois_out);

DatasetSummary generate_dataset_files(const GeneratorSpec& spec, const std::string& nodes_path,
                                      const std::string& edges_path, const std::string& pois_path);

}  // namespace gdrst
