#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rbcom {

/// Shortest-looking decimal with at most `significant` digits: "%.{n}g" with the
/// exponent compacted (e-08 -> e-8) and ".0" appended to bare integers.
std::string format_number(double x, int significant = 10);

/// Comma-separated table with a fixed header. Fields containing a comma, quote or
/// newline are quoted; every row ends in '\n'.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    CsvWriter& row(std::vector<std::string> fields);
    std::size_t rows() const noexcept { return rows_.size(); }
    std::string str() const;

    static std::string escape(std::string_view field);

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

inline std::string to_field(double x) { return format_number(x); }
inline std::string to_field(std::uint64_t x) { return std::to_string(x); }
inline std::string to_field(std::int64_t x) { return std::to_string(x); }
inline std::string to_field(int x) { return std::to_string(x); }
inline std::string to_field(bool x) { return x ? "true" : "false"; }

}  // namespace rbcom
