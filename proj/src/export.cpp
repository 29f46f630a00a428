#include "vofrac/export.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace vofrac {

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return {buf.data(), end};
}

namespace {

std::string header_line(const std::vector<std::string>& header) {
    std::string line;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) line += ',';
        line += header[i];
    }
    line += '\n';
    return line;
}

void append_row(std::string& out, std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_double(values[i]);
    }
    out += '\n';
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        parts.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::string xml_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
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

std::string fixed2(double v) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.2f", v);
    return buf.data();
}

}  // namespace

std::string format_csv(const Trajectory& traj) {
    std::vector<std::string> header{"t"};
    for (std::size_t i = 1; i <= traj.dimension(); ++i) header.push_back("x" + std::to_string(i));
    std::string out = header_line(header);
    out.reserve(out.size() + traj.size() * (traj.dimension() + 1) * 24);
    std::vector<double> row(traj.dimension() + 1);
    for (std::size_t k = 0; k < traj.size(); ++k) {
        row[0] = traj.time(k);
        const auto x = traj.state(k);
        std::copy(x.begin(), x.end(), row.begin() + 1);
        append_row(out, row);
    }
    return out;
}

CsvTable parse_csv(std::string_view text) {
    CsvTable table;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const std::size_t eol = text.find('\n');
        const std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (line_no == 1) {
            for (auto field : split(line, ',')) table.header.emplace_back(field);
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != table.header.size()) {
            throw std::runtime_error("parse_csv: line " + std::to_string(line_no) + " has " +
                                     std::to_string(fields.size()) + " fields");
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (auto field : fields) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            if (ec != std::errc{} || ptr != field.data() + field.size()) {
                throw std::runtime_error("parse_csv: bad number '" + std::string(field) + "' on line " +
                                         std::to_string(line_no));
            }
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    if (table.header.empty()) throw std::runtime_error("parse_csv: empty input");
    return table;
}

std::string format_csv(const CsvTable& table) {
    std::string out = header_line(table.header);
    for (const auto& row : table.rows) append_row(out, row);
    return out;
}

std::string format_svg(const std::vector<PortraitSeries>& series, std::size_t x_index,
                       std::size_t y_index) {
    constexpr double width = 800.0;
    constexpr double height = 600.0;
    constexpr double margin = 40.0;
    constexpr std::array<const char*, 6> colors = {"#1f77b4", "#d62728", "#2ca02c",
                                                   "#9467bd", "#ff7f0e", "#8c564b"};

    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (const auto& s : series) {
        const Trajectory& traj = *s.trajectory;
        if (x_index >= traj.dimension() || y_index >= traj.dimension()) {
            throw std::invalid_argument("format_svg: component index out of range");
        }
        for (std::size_t k = 0; k < traj.size(); ++k) {
            const auto x = traj.state(k);
            x_min = std::min(x_min, x[x_index]);
            x_max = std::max(x_max, x[x_index]);
            y_min = std::min(y_min, x[y_index]);
            y_max = std::max(y_max, x[y_index]);
        }
    }
    if (!std::isfinite(x_min)) {
        x_min = y_min = -1.0;
        x_max = y_max = 1.0;
    }
    if (x_max - x_min <= 0.0) { x_min -= 0.5; x_max += 0.5; }
    if (y_max - y_min <= 0.0) { y_min -= 0.5; y_max += 0.5; }
    const double sx = (width - 2 * margin) / (x_max - x_min);
    const double sy = (height - 2 * margin) / (y_max - y_min);

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    out += "<rect x=\"40\" y=\"40\" width=\"720\" height=\"520\" fill=\"none\" stroke=\"#999999\"/>\n";
    out += "<text x=\"400\" y=\"590\" font-size=\"14\" text-anchor=\"middle\">x" +
           std::to_string(x_index + 1) + " [" + format_double(x_min) + ", " + format_double(x_max) +
           "]</text>\n";
    out += "<text x=\"12\" y=\"300\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 12 300)\">x" +
           std::to_string(y_index + 1) + " [" + format_double(y_min) + ", " + format_double(y_max) +
           "]</text>\n";
    for (std::size_t si = 0; si < series.size(); ++si) {
        const Trajectory& traj = *series[si].trajectory;
        out += "<polyline fill=\"none\" stroke-width=\"0.6\" stroke=\"";
        out += colors[si % colors.size()];
        out += "\" data-label=\"" + xml_escape(series[si].label) + "\" points=\"";
        for (std::size_t k = 0; k < traj.size(); ++k) {
            const auto x = traj.state(k);
            if (k) out += ' ';
            out += fixed2(margin + (x[x_index] - x_min) * sx);
            out += ',';
            out += fixed2(height - margin - (x[y_index] - y_min) * sy);
        }
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace vofrac
