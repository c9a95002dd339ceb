#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace mmval {

/// Fixed-point rendering at `precision` decimals. A value that rounds to
/// zero loses its sign: "-0.00" would suggest a residual that is not there.
inline std::string format_fixed(double value, int precision) {
    char buf[64];
    int n = std::snprintf(buf, sizeof buf, "%.*f", precision, value);
    std::string out(buf, static_cast<std::size_t>(n));
    if (out.front() == '-' &&
        out.find_first_not_of("0.", 1) == std::string::npos)
        out.erase(0, 1);
    return out;
}

/// Shortest decimal string that parses back to exactly the same double.
inline std::string format_shortest(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, ptr);
}

inline std::string format_int(std::int64_t value) { return std::to_string(value); }

/// One formatted output row; the writer below aligns or comma-joins them.
using Row = std::vector<std::string>;

inline std::string render_csv(const Row& header, const std::vector<Row>& rows) {
    std::string out;
    auto emit = [&out](const Row& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    };
    emit(header);
    for (const Row& row : rows) emit(row);
    return out;
}

/// Right-align every column to its widest cell, two spaces between columns.
inline std::string render_table(const Row& header, const std::vector<Row>& rows) {
    std::vector<std::size_t> width(header.size());
    auto widen = [&width](const Row& row) {
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    };
    widen(header);
    for (const Row& row : rows) widen(row);

    std::string out;
    auto emit = [&](const Row& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += "  ";
            out.append(width[i] - row[i].size(), ' ');
            out += row[i];
        }
        out += '\n';
    };
    emit(header);
    for (const Row& row : rows) emit(row);
    return out;
}

}  // namespace mmval
