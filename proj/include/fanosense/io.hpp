#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace fanosense::io {

// Shortest decimal that round-trips to the same double. nan and inf spelled out.
std::string format_double(double x);

// NaN and infinities become null.
nlohmann::json number_or_null(double x);

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// '#'-prefixed metadata lines, one header line, then rows.
void write_csv(const std::filesystem::path& path, const std::vector<std::pair<std::string, std::string>>& meta,
               const Table& table);

std::string csv_text(const std::vector<std::pair<std::string, std::string>>& meta, const Table& table);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

struct Series {
    std::string label;
    std::vector<double> y;
};

// Polyline plot of every series against x on shared axes.
void write_svg(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
               const std::vector<double>& x, const std::vector<Series>& series);

}  // namespace fanosense::io
