#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gdrst {

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

std::optional<std::int64_t> parse_int64(std::string_view s);
std::optional<double> parse_double(std::string_view s);

// Uppercased with all whitespace removed; the equivalence used for label
// comparisons so e.g. "LOW COST" and "LOWCOST" name the same class.
std::string normalize_label(std::string_view s);

/**
 * Reads logical lines from text input: strips trailing CR (CRLF input),
 * skips blank lines and `#` comments, and reports 1-based line numbers
 * for error messages.
 */
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    // Next meaningful line, or nullopt at EOF.
    std::optional<std::string> next();
    std::size_t line_number() const { return line_no_; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

}  // namespace gdrst
