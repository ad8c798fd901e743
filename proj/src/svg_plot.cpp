#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <vector>

#include "spinterf/io.hpp"
#include "spinterf/sweep.hpp"

namespace spinterf {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 540.0;
constexpr double kMarginLeft = 72.0;
constexpr double kMarginRight = 160.0;  // leaves room for the legend
constexpr double kMarginTop = 24.0;
constexpr double kMarginBottom = 52.0;
constexpr int kTickCount = 5;

constexpr std::array<const char*, 16> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939",
    "#8c6d31", "#843c39", "#7b4173", "#3182bd"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::size_t column_index(const Table& table, const std::string& name) {
    const auto it = std::find(table.columns.begin(), table.columns.end(), name);
    if (it == table.columns.end()) {
        throw std::invalid_argument("no column named '" + name + "'");
    }
    return static_cast<std::size_t>(it - table.columns.begin());
}

}  // namespace

void emit_svg_lineplot(const Table& table, const std::filesystem::path& path,
                       const std::string& x_axis,
                       const std::string& series_axis) {
    if (table.rows.empty()) {
        throw std::invalid_argument("cannot plot an empty table");
    }
    const std::size_t x_col = column_index(table, x_axis);
    const std::size_t y_col = table.columns.size() - 1;
    if (x_col == y_col) {
        throw std::invalid_argument("x axis cannot be the quantity column");
    }

    // one (label, points) bucket per distinct series value, in first-seen order
    std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>>
        series;
    if (series_axis.empty()) {
        series.emplace_back();
        for (const auto& row : table.rows) {
            series[0].second.emplace_back(row[x_col], row[y_col]);
        }
    } else {
        const std::size_t s_col = column_index(table, series_axis);
        std::map<double, std::size_t> bucket_of;
        for (const auto& row : table.rows) {
            auto [it, inserted] = bucket_of.try_emplace(row[s_col], series.size());
            if (inserted) {
                if (series.size() == 16) {
                    throw std::invalid_argument("more than 16 series");
                }
                series.emplace_back(series_axis + "=" + num(row[s_col]),
                                    std::vector<std::pair<double, double>>{});
            }
            series[it->second].second.emplace_back(row[x_col], row[y_col]);
        }
    }

    double x_lo = table.rows[0][x_col], x_hi = x_lo;
    double y_lo = table.rows[0][y_col], y_hi = y_lo;
    for (const auto& row : table.rows) {
        x_lo = std::min(x_lo, row[x_col]);
        x_hi = std::max(x_hi, row[x_col]);
        y_lo = std::min(y_lo, row[y_col]);
        y_hi = std::max(y_hi, row[y_col]);
    }
    if (x_hi == x_lo) { x_lo -= 0.5; x_hi += 0.5; }
    if (y_hi == y_lo) { y_lo -= 0.5; y_hi += 0.5; }
    const double y_pad = 0.05 * (y_hi - y_lo);
    y_lo -= y_pad;
    y_hi += y_pad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const auto sx = [&](double x) {
        return kMarginLeft + (x - x_lo) / (x_hi - x_lo) * plot_w;
    };
    const auto sy = [&](double y) {
        return kHeight - kMarginBottom - (y - y_lo) / (y_hi - y_lo) * plot_h;
    };

    std::ofstream out(path);
    if (!out) throw IoError(path.string() + ": cannot open for writing");

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
        << kHeight << "\">\n"
        << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";

    // frame
    out << "  <rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop
        << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    for (int i = 0; i < kTickCount; ++i) {
        const double f = static_cast<double>(i) / (kTickCount - 1);
        const double xv = x_lo + f * (x_hi - x_lo);
        const double yv = y_lo + f * (y_hi - y_lo);
        const double px = sx(xv);
        const double py = sy(yv);
        out << "  <line x1=\"" << px << "\" y1=\"" << kHeight - kMarginBottom
            << "\" x2=\"" << px << "\" y2=\"" << kHeight - kMarginBottom + 5
            << "\" stroke=\"#333333\"/>\n"
            << "  <text x=\"" << px << "\" y=\"" << kHeight - kMarginBottom + 18
            << "\" font-size=\"11\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\">"
            << escape_xml(num(xv)) << "</text>\n"
            << "  <line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << py
            << "\" x2=\"" << kMarginLeft << "\" y2=\"" << py
            << "\" stroke=\"#333333\"/>\n"
            << "  <text x=\"" << kMarginLeft - 8 << "\" y=\"" << py + 4
            << "\" font-size=\"11\" text-anchor=\"end\" "
               "font-family=\"sans-serif\">"
            << escape_xml(num(yv)) << "</text>\n";
    }

    out << "  <text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\""
        << kHeight - 14
        << "\" font-size=\"13\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\">"
        << escape_xml(x_axis) << "</text>\n"
        << "  <text x=\"18\" y=\"" << kMarginTop + plot_h / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" transform=\"rotate(-90 18 "
        << kMarginTop + plot_h / 2 << ")\">"
        << escape_xml(table.columns[y_col]) << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        out << "  <polyline fill=\"none\" stroke=\"" << kPalette[s]
            << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : series[s].second) {
            out << num(sx(x)) << ',' << num(sy(y)) << ' ';
        }
        out << "\"/>\n";
        if (!series[s].first.empty()) {
            const double ly = kMarginTop + 16 + 18 * static_cast<double>(s);
            out << "  <line x1=\"" << kWidth - kMarginRight + 12 << "\" y1=\""
                << ly - 4 << "\" x2=\"" << kWidth - kMarginRight + 34
                << "\" y2=\"" << ly - 4 << "\" stroke=\"" << kPalette[s]
                << "\" stroke-width=\"2\"/>\n"
                << "  <text x=\"" << kWidth - kMarginRight + 40 << "\" y=\""
                << ly << "\" font-size=\"11\" font-family=\"sans-serif\">"
                << escape_xml(series[s].first) << "</text>\n";
        }
    }

    out << "</svg>\n";
    if (!out.flush()) throw IoError(path.string() + ": write failed");
}

}  // namespace spinterf
