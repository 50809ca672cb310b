#pragma once
// Minimal CSV emission with shortest round-trip number formatting, so equal
// inputs give byte-identical files.

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace casimir_duomode::io {

inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";  // also folds -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

using Cell = std::variant<double, long long, std::string>;

inline std::string format_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
}

struct CsvTable {
    std::vector<std::pair<std::string, std::string>> metadata;  ///< "# key=value" lines before the header
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void meta(std::string key, std::string value) { metadata.emplace_back(std::move(key), std::move(value)); }
    void meta(std::string key, double value) { metadata.emplace_back(std::move(key), format_number(value)); }

    void write(std::ostream& os) const {
        for (const auto& [k, v] : metadata) os << "# " << k << '=' << v << '\n';
        for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
        os << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
            os << '\n';
        }
    }
};

}  // namespace casimir_duomode::io
