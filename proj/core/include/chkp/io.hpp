#pragma once

#include <map>
#include <string>
#include <vector>

#include "chkp/field.hpp"

namespace chkp::io {

/// Key-value configuration file: one `key = value` per line, keys
/// namespaced with dots, '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path);
std::map<std::string, std::string> parse_config(const std::string& text);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Minimal standalone SVG line plots.
struct Series {
    std::vector<double> x, y;
    std::string label;
    std::string color = "#1f77b4";
    bool points_only = false;
};

struct LinePlot {
    std::string title, xlabel, ylabel;
    bool logy = false;
    std::vector<Series> series;

    void add(Series s) { series.push_back(std::move(s)); }
    void write(const std::string& path) const;
};

/// Raw little-endian doubles (row-major values) plus a JSON sidecar with
/// the grid metadata.
struct SnapshotMeta {
    double t = 0.0, c = 0.0, kappa = 0.0;
    double lx = 0.0, k0 = 0.0;
    int nx = 0, ny = 0;
};

void save_snapshot(const Field2D& f, const SnapshotMeta& meta, const std::string& base_path);
Field2D load_snapshot(const std::string& base_path, SnapshotMeta* meta_out = nullptr);

} // namespace chkp::io
