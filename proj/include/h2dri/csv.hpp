#pragma once

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "h2dri/errors.hpp"

namespace h2dri {

// Minimal strict CSV support: numeric cells, exact header match, no quoting.
// All file formats in this project are fixed-column numeric tables.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t col(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return i;
        }
        throw ValidationError("csv: missing column '" + name + "'");
    }
};

namespace detail {
inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // trim whitespace and a possible trailing CR
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}
}  // namespace detail

inline CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path.string());
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw ValidationError(path.string() + ": empty file");
    t.header = detail::split_csv_line(line);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != t.header.size()) {
            throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                                  std::to_string(t.header.size()) + " columns, got " +
                                  std::to_string(cells.size()));
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (cells[i] == "nan" || cells[i].empty()) {
                row.push_back(std::numeric_limits<double>::quiet_NaN());
                continue;
            }
            errno = 0;
            char* end = nullptr;
            const double v = std::strtod(cells[i].c_str(), &end);
            if (end == cells[i].c_str() || *end != '\0' || errno == ERANGE) {
                throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": column '" +
                                      t.header[i] + "': not a number: '" + cells[i] + "'");
            }
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline void expect_header(const CsvTable& t, const std::vector<std::string>& expected,
                          const std::string& what) {
    if (t.header != expected) {
        std::string want;
        for (const auto& h : expected) want += (want.empty() ? "" : ",") + h;
        std::string got;
        for (const auto& h : t.header) got += (got.empty() ? "" : ",") + h;
        throw ValidationError(what + ": header mismatch; expected '" + want + "', got '" + got + "'");
    }
}

// Full round-trip precision; series files written with this survive
// save/load unchanged.
inline std::string format_double_exact(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows, int precision = -1) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    char buf[40];
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ",";
            if (precision < 0) {
                out << format_double_exact(row[i]);
            } else {
                std::snprintf(buf, sizeof(buf), "%.*f", precision, row[i]);
                out << buf;
            }
        }
        out << "\n";
    }
    if (!out) throw ValidationError("write failed: " + path.string());
}

}  // namespace h2dri
