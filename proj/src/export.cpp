#include "frf/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace frf {

namespace {

void check_cell(std::string_view s) {
    if (s.find_first_of(",\n") != std::string_view::npos)
        throw contract_error("CsvDocument: cells must not contain commas or newlines");
}

std::vector<std::string> split_cells(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            return out;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvDocument::add_meta(std::string key, std::string value) {
    check_cell(key);
    if (value.find('\n') != std::string::npos)
        throw contract_error("CsvDocument: metadata must not contain newlines");
    metadata.emplace_back(std::move(key), std::move(value));
}

void CsvDocument::add_meta(std::string key, double value) {
    add_meta(std::move(key), format_double(value));
}

void CsvDocument::add_meta(std::string key, std::int64_t value) {
    add_meta(std::move(key), std::to_string(value));
}

std::string CsvDocument::to_string() const {
    std::ostringstream out;
    for (const auto& [key, value] : metadata) out << "# " << key << "=" << value << "\n";
    auto write_row = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            check_cell(cells[i]);
            if (i > 0) out << ",";
            out << cells[i];
        }
        out << "\n";
    };
    if (!header.empty()) write_row(header);
    for (const auto& row : rows) {
        if (!header.empty() && row.size() != header.size())
            throw contract_error("CsvDocument: row width differs from header");
        write_row(row);
    }
    return out.str();
}

CsvDocument CsvDocument::parse(std::string_view text) {
    CsvDocument doc;
    std::size_t pos = 0;
    bool saw_header = false;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty()) continue;
        if (line.starts_with("# ")) {
            const std::string_view body = line.substr(2);
            const std::size_t eq = body.find('=');
            if (eq == std::string_view::npos)
                throw io_error("CsvDocument::parse: metadata line without '='");
            doc.metadata.emplace_back(std::string(body.substr(0, eq)),
                                      std::string(body.substr(eq + 1)));
            continue;
        }
        if (!saw_header) {
            doc.header = split_cells(line);
            saw_header = true;
        } else {
            doc.rows.push_back(split_cells(line));
        }
    }
    return doc;
}

std::string svg_polyline(const Eigen::ArrayXcd& values) {
    if (values.size() == 0) throw argument_error("svg_polyline: empty curve");
    double x_lo = values[0].real(), x_hi = x_lo;
    double y_lo = values[0].imag(), y_hi = y_lo;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
            throw numeric_error("svg_polyline: non-finite point");
        x_lo = std::min(x_lo, values[i].real());
        x_hi = std::max(x_hi, values[i].real());
        y_lo = std::min(y_lo, values[i].imag());
        y_hi = std::max(y_hi, values[i].imag());
    }
    const double span = std::max({x_hi - x_lo, y_hi - y_lo, 1e-12});
    const double scale = 960.0 / span;
    const double x_off = 500.0 - scale * (x_lo + x_hi) / 2.0;
    const double y_off = 500.0 - scale * (y_lo + y_hi) / 2.0;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\">\n"
        << "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n"
        << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
    char buf[64];
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        const double sx = scale * values[i].real() + x_off;
        const double sy = 1000.0 - (scale * values[i].imag() + y_off);  // SVG y grows downward
        std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", i ? " " : "", sx, sy);
        out << buf;
    }
    out << "\"/>\n</svg>\n";
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw io_error("read failed: " + path);
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw io_error("write failed: " + path);
}

}  // namespace frf
