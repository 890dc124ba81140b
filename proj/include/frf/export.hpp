#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "frf/errors.hpp"

namespace frf {

// Canonical double formatting: shortest-exact %.17g, identical bytes on
// every run.
std::string format_double(double v);

// Plain CSV with `# key=value` metadata lines ahead of the header row.
// Cells are stored as the exact strings written to disk, so
// parse(to_string(doc)) reproduces doc byte for byte.
struct CsvDocument {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_meta(std::string key, std::string value);
    void add_meta(std::string key, double value);
    void add_meta(std::string key, std::int64_t value);

    std::string to_string() const;
    static CsvDocument parse(std::string_view text);

    bool operator==(const CsvDocument&) const = default;
};

// Planar curve as one SVG polyline in a fixed 1000 x 1000 viewBox,
// centered and aspect-preserving.  Purely presentational.
std::string svg_polyline(const Eigen::ArrayXcd& values);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace frf
