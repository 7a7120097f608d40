#pragma once

#include <istream>
#include <string>
#include <vector>

#include "gdrst/geo.hpp"
#include "gdrst/poi_catalog.hpp"

namespace gdrst {

/**
 * One skyline query: where the user is, which way they are traveling, the
 * primary preference defining the candidate set, secondary preferences that
 * each contribute a travel-time dimension, and attribute objectives folded
 * into the cost vector.
 */
struct SkylineQuery {
    GeoPoint origin;
    Heading heading;  // defaults to the full circle: no directional pruning
    PreferenceSpec primary;
    std::vector<PreferenceSpec> secondary;
    std::vector<Objective> objectives;
};

/**
 * Parses one query record. Grammar (see README for the full description):
 *
 *   origin_lat=<deg>, origin_lon=<deg>[, bearing=<deg>][, half_angle=<deg>],
 *   primary=<spec>[, secondary=<spec>[;<spec>...]][, objectives=<attr>:<min|max>[,...]]
 *
 *   spec := category[:filter...]
 *   filter := label=<value>[|<value>...] | <attr> in [<min>..<max>]
 *
 * A comma separates fields only when followed by a known key; commas inside
 * values (objective lists) stay put. bearing without half_angle implies a
 * 90-degree half angle; no bearing at all means the full circle.
 */
SkylineQuery parse_query_record(const std::string& text);

// Inverse of parse_query_record, used for reproducer dumps.
std::string format_query_record(const SkylineQuery& q);

// One record per line; `#` comments and blank lines skipped.
std::vector<SkylineQuery> parse_queries(std::istream& in);

// Cost-vector dimension names shared by the engine, the oracle and the
// baseline so their schemas compare equal.
std::string dim_name_origin();
std::string dim_name_secondary(std::size_t index, const PreferenceSpec& spec);
std::string dim_name_objective(const Objective& o);

std::string empty_spec_warning(const PreferenceSpec& spec);

}  // namespace gdrst
