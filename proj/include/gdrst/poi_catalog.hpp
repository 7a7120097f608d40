#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gdrst/grid_index.hpp"
#include "gdrst/road_network.hpp"

namespace gdrst {

enum class Sense { Minimize, Maximize };

// A static attribute folded into the cost vector as an extra dimension.
struct Objective {
    std::string attribute;
    Sense sense = Sense::Minimize;
};

/**
 * A categorized point of interest snapped to its nearest network node.
 * Numeric columns land in `attributes`; everything else is kept as a label
 * (e.g. a cost class). Labels compare whitespace- and case-insensitively.
 */
struct Poi {
    std::string poi_id;
    GeoPoint location;
    NodeId snapped_node = 0;
    std::string category;
    std::map<std::string, double> attributes;
    std::map<std::string, std::string> labels;
};

struct RangeFilter {
    std::string attribute;
    double min = 0.0;
    double max = 0.0;  // closed interval: boundary values pass
};

/**
 * One user preference: the POI category it draws from, optional label and
 * range filters narrowing the member set, and attribute objectives.
 */
struct PreferenceSpec {
    std::string category;
    std::optional<std::set<std::string>> label_filter;  // compared via normalize_label
    std::vector<RangeFilter> range_filters;
    std::vector<Objective> objectives;

    // Stable text form: used as cache-key component and field-memo key.
    // Filters are order-insensitive (sorted); nothing else is reordered.
    std::string canonical_key() const;
};

class PoiCatalog {
public:
    PoiCatalog() = default;

    // Parses `poi_id,lat,lon,category[,key=value...]` lines; each POI is
    // snapped to its nearest network node through the grid index.
    static PoiCatalog load(std::istream& source, const RoadNetwork& net, const GridIndex& idx);
    static PoiCatalog load_file(const std::string& path, const RoadNetwork& net, const GridIndex& idx);

    void add(Poi poi);

    std::size_t size() const { return pois_.size(); }
    bool has(const std::string& poi_id) const { return pois_.count(poi_id) != 0; }
    const Poi& get(const std::string& poi_id) const;
    const std::map<std::string, Poi>& pois() const { return pois_; }

    // Ascending poi_ids of one category; empty for unknown categories.
    std::vector<std::string> category_members(const std::string& category) const;
    std::vector<std::string> categories() const;

    // True iff the POI matches the preference's category and passes every
    // label and range filter. Pure predicate; no travel-time computation.
    static bool passes(const Poi& poi, const PreferenceSpec& spec);

    // The Filter phase: the initial candidate set for a preference, in
    // ascending poi_id order.
    std::vector<std::string> filter_phase(const PreferenceSpec& spec) const;

private:
    std::map<std::string, Poi> pois_;
    std::map<std::string, std::set<std::string>> by_category_;
};

}  // namespace gdrst
