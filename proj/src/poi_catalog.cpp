#include "gdrst/poi_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gdrst/text.hpp"

namespace gdrst {

std::string PreferenceSpec::canonical_key() const {
    std::ostringstream out;
    out << "cat=" << category;
    if (label_filter) {
        std::set<std::string> normalized;
        for (const std::string& l : *label_filter) normalized.insert(normalize_label(l));
        out << "|labels=";
        bool first = true;
        for (const std::string& l : normalized) {
            if (!first) out << ',';
            out << l;
            first = false;
        }
    }
    if (!range_filters.empty()) {
        std::vector<RangeFilter> sorted = range_filters;
        std::sort(sorted.begin(), sorted.end(), [](const RangeFilter& a, const RangeFilter& b) {
            if (a.attribute != b.attribute) return a.attribute < b.attribute;
            if (a.min != b.min) return a.min < b.min;
            return a.max < b.max;
        });
        out << "|ranges=";
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (i) out << ',';
            out << sorted[i].attribute << ':' << sorted[i].min << ':' << sorted[i].max;
        }
    }
    if (!objectives.empty()) {
        out << "|obj=";
        for (std::size_t i = 0; i < objectives.size(); ++i) {
            if (i) out << ',';
            out << objectives[i].attribute << ':'
                << (objectives[i].sense == Sense::Minimize ? "min" : "max");
        }
    }
    return out.str();
}

PoiCatalog PoiCatalog::load(std::istream& source, const RoadNetwork& net, const GridIndex& idx) {
    PoiCatalog cat;
    LineReader reader(source);
    while (auto line = reader.next()) {
        auto parts = split(*line, ',');
        if (parts.size() < 4) {
            throw DataError("pois line " + std::to_string(reader.line_number()) +
                            ": expected `poi_id,lat,lon,category[,key=value...]`");
        }
        Poi poi;
        poi.poi_id = std::string(trim(parts[0]));
        auto lat = parse_double(parts[1]);
        auto lon = parse_double(parts[2]);
        poi.category = std::string(trim(parts[3]));
        if (poi.poi_id.empty() || poi.category.empty() || !lat || !lon) {
            throw DataError("pois line " + std::to_string(reader.line_number()) + ": malformed row");
        }
        if (cat.has(poi.poi_id)) {
            throw DataError("pois line " + std::to_string(reader.line_number()) +
                            ": duplicate poi_id " + poi.poi_id);
        }
        try {
            poi.location = GeoPoint(*lat, *lon);
        } catch (const DataError& e) {
            throw DataError("pois line " + std::to_string(reader.line_number()) + ": " + e.what());
        }

        for (std::size_t i = 4; i < parts.size(); ++i) {
            const std::string_view field = trim(parts[i]);
            const std::size_t eq = field.find('=');
            if (eq == std::string_view::npos || eq == 0) {
                throw DataError("pois line " + std::to_string(reader.line_number()) +
                                ": expected key=value, got `" + std::string(field) + "`");
            }
            const std::string key(trim(field.substr(0, eq)));
            const std::string_view value = trim(field.substr(eq + 1));
            if (poi.attributes.count(key) || poi.labels.count(key)) {
                throw DataError("pois line " + std::to_string(reader.line_number()) +
                                ": duplicate attribute " + key);
            }
            if (auto num = parse_double(value); num && std::isfinite(*num)) {
                poi.attributes.emplace(key, *num);
            } else {
                poi.labels.emplace(key, std::string(value));
            }
        }

        poi.snapped_node = idx.nearest_node(poi.location);
        if (!net.has_node(poi.snapped_node)) {
            throw DataError("pois line " + std::to_string(reader.line_number()) +
                            ": grid index does not match the network");
        }
        cat.add(std::move(poi));
    }
    return cat;
}

PoiCatalog PoiCatalog::load_file(const std::string& path, const RoadNetwork& net, const GridIndex& idx) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open pois file: " + path);
    return load(in, net, idx);
}

void PoiCatalog::add(Poi poi) {
    if (has(poi.poi_id)) throw DataError("duplicate poi_id " + poi.poi_id);
    by_category_[poi.category].insert(poi.poi_id);
    pois_.emplace(poi.poi_id, std::move(poi));
}

const Poi& PoiCatalog::get(const std::string& poi_id) const {
    auto it = pois_.find(poi_id);
    if (it == pois_.end()) throw DataError("unknown poi_id " + poi_id);
    return it->second;
}

std::vector<std::string> PoiCatalog::category_members(const std::string& category) const {
    auto it = by_category_.find(category);
    if (it == by_category_.end()) return {};
    return std::vector<std::string>(it->second.begin(), it->second.end());
}

std::vector<std::string> PoiCatalog::categories() const {
    std::vector<std::string> out;
    out.reserve(by_category_.size());
    for (const auto& [c, members] : by_category_) out.push_back(c);
    return out;
}

bool PoiCatalog::passes(const Poi& poi, const PreferenceSpec& spec) {
    if (poi.category != spec.category) return false;

    if (spec.label_filter) {
        bool matched = false;
        for (const auto& [key, value] : poi.labels) {
            const std::string norm = normalize_label(value);
            for (const std::string& admissible : *spec.label_filter) {
                if (norm == normalize_label(admissible)) {
                    matched = true;
                    break;
                }
            }
            if (matched) break;
        }
        if (!matched) return false;
    }

    for (const RangeFilter& rf : spec.range_filters) {
        auto it = poi.attributes.find(rf.attribute);
        if (it == poi.attributes.end()) return false;  // cannot verify: filtered out
        if (it->second < rf.min || it->second > rf.max) return false;
    }
    return true;
}

std::vector<std::string> PoiCatalog::filter_phase(const PreferenceSpec& spec) const {
    std::vector<std::string> out;
    auto it = by_category_.find(spec.category);
    if (it == by_category_.end()) return out;
    for (const std::string& id : it->second) {
        if (passes(pois_.at(id), spec)) out.push_back(id);
    }
    return out;
}

}  // namespace gdrst
