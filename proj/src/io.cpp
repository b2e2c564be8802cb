#include "fanosense/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "fanosense/errors.hpp"

namespace fanosense::io {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

std::string csv_text(const std::vector<std::pair<std::string, std::string>>& meta, const Table& table) {
    std::ostringstream out;
    for (const auto& [key, value] : meta) out << "# " << key << ": " << value << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "");
            if (const auto* d = std::get_if<double>(&row[i]))
                out << format_double(*d);
            else
                out << std::get<std::string>(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("output", "cannot write " + path.string());
    f << text;
}

}  // namespace

void write_csv(const std::filesystem::path& path, const std::vector<std::pair<std::string, std::string>>& meta,
               const Table& table) {
    write_text(path, csv_text(meta, table));
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) { write_text(path, doc.dump(2) + "\n"); }

void write_svg(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
               const std::vector<double>& x, const std::vector<Series>& series) {
    constexpr double W = 800, H = 500, L = 70, R = 20, T = 40, B = 60;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
        << title << "</text>\n";
    svg << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    double xmin = x.empty() ? 0.0 : *std::min_element(x.begin(), x.end());
    double xmax = x.empty() ? 1.0 : *std::max_element(x.begin(), x.end());
    if (xmax == xmin) xmax = xmin + 1.0;
    double ymin = INFINITY, ymax = -INFINITY;
    for (const auto& s : series)
        for (double y : s.y)
            if (std::isfinite(y)) {
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
    if (!std::isfinite(ymin)) ymin = 0.0, ymax = 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;

    auto px = [&](double v) { return L + (v - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double v) { return H - B - (v - ymin) / (ymax - ymin) * (H - T - B); };

    for (std::size_t k = 0; k < series.size(); ++k) {
        svg << "<polyline fill=\"none\" stroke=\"" << colors[k % 6] << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < x.size() && i < series[k].y.size(); ++i)
            if (std::isfinite(series[k].y[i])) svg << format_double(px(x[i])) << ',' << format_double(py(series[k].y[i])) << ' ';
        svg << "\"/>\n";
        svg << "<text x=\"" << W - R - 10 << "\" y=\"" << T + 18 * (k + 1) << "\" text-anchor=\"end\" fill=\""
            << colors[k % 6] << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[k].label << "</text>\n";
    }
    svg << "<text x=\"" << W / 2 << "\" y=\"" << H - 20 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << x_label << "</text>\n";
    svg << "<text x=\"" << L << "\" y=\"" << H - B + 16 << "\" font-family=\"sans-serif\" font-size=\"10\">"
        << format_double(xmin) << "</text>\n";
    svg << "<text x=\"" << W - R << "\" y=\"" << H - B + 16 << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
        << format_double(xmax) << "</text>\n";
    svg << "<text x=\"" << L - 4 << "\" y=\"" << T + 10 << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
        << format_double(ymax) << "</text>\n";
    svg << "<text x=\"" << L - 4 << "\" y=\"" << H - B << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
        << format_double(ymin) << "</text>\n";
    svg << "</svg>\n";
    write_text(path, svg.str());
}

}  // namespace fanosense::io
