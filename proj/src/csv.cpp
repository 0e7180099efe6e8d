#include "rbcom/csv.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "rbcom/error.hpp"

namespace rbcom {

std::string format_number(double x, int significant) {
    detail::require(significant >= 1 && significant <= 17, "format_number: digits in [1, 17]");
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0.0";

    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant, x);
    std::string s(buf);

    const auto e = s.find('e');
    std::string mantissa = s.substr(0, e);
    std::string exponent;
    if (e != std::string::npos) {
        // e-08 -> e-8, e+09 -> e9
        const char sign = s[e + 1];
        std::string digits = s.substr(e + 2);
        digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
        exponent = std::string("e") + (sign == '-' ? "-" : "") + digits;
    }
    if (mantissa.find('.') == std::string::npos) mantissa += ".0";
    return mantissa + exponent;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {
    detail::require(!header_.empty(), "CsvWriter: empty header");
}

CsvWriter& CsvWriter::row(std::vector<std::string> fields) {
    detail::require(fields.size() == header_.size(), "CsvWriter: row width differs from header");
    rows_.push_back(std::move(fields));
    return *this;
}

std::string CsvWriter::escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (const char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string CsvWriter::str() const {
    std::ostringstream out;
    const auto emit = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out << ',';
            out << escape(fields[i]);
        }
        out << '\n';
    };
    emit(header_);
    for (const auto& r : rows_) emit(r);
    return out.str();
}

}  // namespace rbcom
