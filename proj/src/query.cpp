#include "gdrst/query.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

#include "gdrst/text.hpp"

namespace gdrst {

namespace {

const std::array<std::string_view, 7> kKeys = {
    "origin_lat", "origin_lon", "bearing", "half_angle", "primary", "secondary", "objectives",
};

bool starts_with_key(std::string_view rest, std::string_view& key_out) {
    rest = trim(rest);
    for (std::string_view k : kKeys) {
        if (rest.size() <= k.size() || rest.substr(0, k.size()) != k) continue;
        const std::string_view after = trim(rest.substr(k.size()));
        if (!after.empty() && after.front() == '=') {
            key_out = k;
            return true;
        }
    }
    return false;
}

// Splits on commas that start a new `key=` field; other commas belong to
// the current value.
std::vector<std::pair<std::string, std::string>> split_fields(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> fields;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::string_view rest = std::string_view(text).substr(pos);
        std::string_view key;
        if (!starts_with_key(rest, key)) {
            throw DataError("query record: expected key=value at `" + std::string(trim(rest)) + "`");
        }
        const std::size_t eq = text.find('=', pos);
        std::size_t value_start = eq + 1;
        // Value runs until a comma that introduces another known key.
        std::size_t end = value_start;
        while (true) {
            const std::size_t comma = text.find(',', end);
            if (comma == std::string::npos) {
                end = text.size();
                break;
            }
            std::string_view next_key;
            if (starts_with_key(std::string_view(text).substr(comma + 1), next_key)) {
                end = comma;
                break;
            }
            end = comma + 1;
        }
        fields.emplace_back(std::string(key), std::string(trim(text.substr(value_start, end - value_start))));
        pos = end < text.size() ? end + 1 : end;
    }
    return fields;
}

PreferenceSpec parse_spec(std::string_view text) {
    PreferenceSpec spec;
    auto parts = split(text, ':');
    spec.category = std::string(trim(parts[0]));
    if (spec.category.empty()) throw DataError("query record: empty category in preference spec");

    for (std::size_t i = 1; i < parts.size(); ++i) {
        std::string_view f = trim(parts[i]);
        if (f.rfind("label=", 0) == 0) {
            std::set<std::string> labels;
            for (std::string_view l : split(f.substr(6), '|')) {
                l = trim(l);
                if (l.empty()) throw DataError("query record: empty label in filter");
                labels.insert(std::string(l));
            }
            if (spec.label_filter) throw DataError("query record: repeated label filter");
            spec.label_filter = std::move(labels);
            continue;
        }
        // range filter: `<attr> in [<min>..<max>]`
        const std::size_t in_pos = f.find(" in ");
        const std::size_t lb = f.find('[');
        const std::size_t dots = f.find("..");
        const std::size_t rb = f.find(']');
        if (in_pos == std::string_view::npos || lb == std::string_view::npos ||
            dots == std::string_view::npos || rb == std::string_view::npos || !(lb < dots && dots < rb)) {
            throw DataError("query record: bad filter `" + std::string(f) +
                            "` (expected label=... or `attr in [min..max]`)");
        }
        RangeFilter rf;
        rf.attribute = std::string(trim(f.substr(0, in_pos)));
        auto lo = parse_double(f.substr(lb + 1, dots - lb - 1));
        auto hi = parse_double(f.substr(dots + 2, rb - dots - 2));
        if (rf.attribute.empty() || !lo || !hi) {
            throw DataError("query record: bad range filter `" + std::string(f) + "`");
        }
        if (*lo > *hi) throw DataError("query record: range filter min exceeds max");
        rf.min = *lo;
        rf.max = *hi;
        spec.range_filters.push_back(std::move(rf));
    }
    return spec;
}

std::vector<Objective> parse_objectives(std::string_view text) {
    std::vector<Objective> out;
    for (std::string_view item : split(text, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const std::size_t colon = item.rfind(':');
        if (colon == std::string_view::npos) {
            throw DataError("query record: objective needs `attr:min` or `attr:max`");
        }
        Objective o;
        o.attribute = std::string(trim(item.substr(0, colon)));
        const std::string_view sense = trim(item.substr(colon + 1));
        if (sense == "min") {
            o.sense = Sense::Minimize;
        } else if (sense == "max") {
            o.sense = Sense::Maximize;
        } else {
            throw DataError("query record: objective sense must be min or max");
        }
        if (o.attribute.empty()) throw DataError("query record: empty objective attribute");
        out.push_back(std::move(o));
    }
    return out;
}

std::string format_spec(const PreferenceSpec& spec) {
    std::ostringstream out;
    out << spec.category;
    if (spec.label_filter) {
        out << ":label=";
        bool first = true;
        for (const std::string& l : *spec.label_filter) {
            if (!first) out << '|';
            out << l;
            first = false;
        }
    }
    for (const RangeFilter& rf : spec.range_filters) {
        out << ':' << rf.attribute << " in [" << rf.min << ".." << rf.max << ']';
    }
    return out.str();
}

}  // namespace

SkylineQuery parse_query_record(const std::string& text) {
    SkylineQuery q;
    bool have_lat = false, have_lon = false, have_primary = false;
    double lat = 0.0, lon = 0.0;
    std::optional<double> bearing, half_angle;

    for (const auto& [key, value] : split_fields(text)) {
        if (key == "origin_lat") {
            auto v = parse_double(value);
            if (!v) throw DataError("query record: bad origin_lat");
            lat = *v;
            have_lat = true;
        } else if (key == "origin_lon") {
            auto v = parse_double(value);
            if (!v) throw DataError("query record: bad origin_lon");
            lon = *v;
            have_lon = true;
        } else if (key == "bearing") {
            bearing = parse_double(value);
            if (!bearing) throw DataError("query record: bad bearing");
        } else if (key == "half_angle") {
            half_angle = parse_double(value);
            if (!half_angle) throw DataError("query record: bad half_angle");
        } else if (key == "primary") {
            q.primary = parse_spec(value);
            have_primary = true;
        } else if (key == "secondary") {
            for (std::string_view s : split(value, ';')) {
                s = trim(s);
                if (!s.empty()) q.secondary.push_back(parse_spec(s));
            }
        } else if (key == "objectives") {
            q.objectives = parse_objectives(value);
        }
    }

    if (!have_lat || !have_lon) throw DataError("query record: origin_lat and origin_lon are required");
    if (!have_primary) throw DataError("query record: primary preference is required");
    q.origin = GeoPoint(lat, lon);

    if (bearing) {
        // A stated direction of travel without a width defaults to a
        // 90-degree half angle.
        q.heading = Heading(*bearing, half_angle.value_or(90.0));
    } else if (half_angle) {
        q.heading = Heading(0.0, *half_angle);
    } else {
        q.heading = Heading();  // full circle
    }
    return q;
}

std::string format_query_record(const SkylineQuery& q) {
    std::ostringstream out;
    char buf[64];
    std::snprintf(buf, sizeof buf, "origin_lat=%.9f, origin_lon=%.9f", q.origin.lat(), q.origin.lon());
    out << buf;
    if (!q.heading.full_circle() || q.heading.bearing != 0.0) {
        std::snprintf(buf, sizeof buf, ", bearing=%.6f, half_angle=%.6f", q.heading.bearing,
                      q.heading.half_angle);
        out << buf;
    }
    out << ", primary=" << format_spec(q.primary);
    if (!q.secondary.empty()) {
        out << ", secondary=";
        for (std::size_t i = 0; i < q.secondary.size(); ++i) {
            if (i) out << ';';
            out << format_spec(q.secondary[i]);
        }
    }
    if (!q.objectives.empty()) {
        out << ", objectives=";
        for (std::size_t i = 0; i < q.objectives.size(); ++i) {
            if (i) out << ',';
            out << q.objectives[i].attribute << ':'
                << (q.objectives[i].sense == Sense::Minimize ? "min" : "max");
        }
    }
    return out.str();
}

std::vector<SkylineQuery> parse_queries(std::istream& in) {
    std::vector<SkylineQuery> out;
    LineReader reader(in);
    while (auto line = reader.next()) {
        try {
            out.push_back(parse_query_record(*line));
        } catch (const DataError& e) {
            throw DataError("queries line " + std::to_string(reader.line_number()) + ": " + e.what());
        }
    }
    return out;
}

std::string dim_name_origin() { return "time_origin"; }

std::string dim_name_secondary(std::size_t index, const PreferenceSpec& spec) {
    return "time_" + std::to_string(index + 1) + "_" + spec.category;
}

std::string dim_name_objective(const Objective& o) {
    return (o.sense == Sense::Minimize ? "min_" : "max_") + o.attribute;
}

std::string empty_spec_warning(const PreferenceSpec& spec) {
    return "preference `" + spec.canonical_key() +
           "` matches no POIs; every candidate is unreachable on that dimension";
}

}  // namespace gdrst
