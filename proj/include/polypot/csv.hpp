#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "polypot/errors.hpp"

namespace polypot {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fnv1a_hex(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Writes a {columns, rows} table as CSV: '.' decimal, '\n' endings, header
/// row. Cells may be numbers, strings, or null (empty cell).
inline void write_table_csv(const std::string& path, const Json& table) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path);
    const auto& cols = table.at("columns");
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) os << ",";
        os << cols[i].get<std::string>();
    }
    os << "\n";
    for (const auto& row : table.at("rows")) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            const auto& c = row[i];
            if (c.is_number_integer())
                os << c.get<long long>();
            else if (c.is_number())
                os << fmt_double(c.get<double>());
            else if (c.is_string())
                os << c.get<std::string>();
            // null -> empty cell
        }
        os << "\n";
    }
}

} // namespace polypot
