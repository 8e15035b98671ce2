#include "chkp/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "chkp/errors.hpp"
#include "chkp/grid.hpp"

namespace chkp::io {

std::map<std::string, std::string> parse_config(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            continue;
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty())
            out[key] = val;
    }
    return out;
}

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("read_config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out)
        throw IoError("write_csv: cannot open " + path);
    out.precision(17);
    for (size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? ',' : '\n');
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? ',' : '\n');
    }
}

namespace {

struct Range {
    double lo = 0.0, hi = 1.0;
    void grow(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
};

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

} // namespace

void LinePlot::write(const std::string& path) const {
    const int width = 640, height = 420;
    const int ml = 70, mr = 20, mt = 36, mb = 48;

    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            double yv = s.y[i];
            if (logy) {
                if (!(yv > 0.0))
                    continue;
                yv = std::log10(yv);
            }
            xlo = std::min(xlo, s.x[i]);
            xhi = std::max(xhi, s.x[i]);
            ylo = std::min(ylo, yv);
            yhi = std::max(yhi, yv);
        }
    if (!(xhi > xlo)) {
        xlo -= 1;
        xhi += 1;
    }
    if (!(yhi > ylo)) {
        ylo -= 1;
        yhi += 1;
    }
    const double xpad = 0.03 * (xhi - xlo), ypad = 0.05 * (yhi - ylo);
    xlo -= xpad;
    xhi += xpad;
    ylo -= ypad;
    yhi += ypad;

    auto px = [&](double x) { return ml + (x - xlo) / (xhi - xlo) * (width - ml - mr); };
    auto py = [&](double y) { return height - mb - (y - ylo) / (yhi - ylo) * (height - mt - mb); };

    std::ofstream out(path);
    if (!out)
        throw IoError("LinePlot::write: cannot open " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">"
        << title << "</text>\n";

    // axes and ticks
    out << "<g stroke=\"#333\" stroke-width=\"1\">\n"
        << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
        << "\" y2=\"" << height - mb << "\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << height - mb << "\"/>\n</g>\n";
    const int nticks = 5;
    out << "<g font-size=\"11\" fill=\"#333\">\n";
    for (int i = 0; i <= nticks; ++i) {
        const double xv = xlo + (xhi - xlo) * i / nticks;
        const double yv = ylo + (yhi - ylo) * i / nticks;
        out << "<line stroke=\"#333\" x1=\"" << px(xv) << "\" y1=\"" << height - mb << "\" x2=\""
            << px(xv) << "\" y2=\"" << height - mb + 4 << "\"/>\n";
        out << "<text x=\"" << px(xv) << "\" y=\"" << height - mb + 16
            << "\" text-anchor=\"middle\">" << fmt_tick(xv) << "</text>\n";
        out << "<line stroke=\"#333\" x1=\"" << ml - 4 << "\" y1=\"" << py(yv) << "\" x2=\"" << ml
            << "\" y2=\"" << py(yv) << "\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
            << (logy ? ("1e" + fmt_tick(yv)) : fmt_tick(yv)) << "</text>\n";
    }
    out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel << "</text>\n";
    out << "<text x=\"16\" y=\"" << (mt + height - mb) / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
        << (mt + height - mb) / 2 << ")\">" << ylabel << "</text>\n</g>\n";

    int legend_y = mt + 6;
    for (const auto& s : series) {
        std::ostringstream pts;
        for (size_t i = 0; i < s.x.size(); ++i) {
            double yv = s.y[i];
            if (logy) {
                if (!(yv > 0.0))
                    continue;
                yv = std::log10(yv);
            }
            pts << px(s.x[i]) << ',' << py(yv) << ' ';
        }
        if (s.points_only) {
            std::istringstream ip(pts.str());
            std::string pair;
            out << "<g fill=\"" << s.color << "\">\n";
            while (ip >> pair) {
                const auto comma = pair.find(',');
                out << "<circle cx=\"" << pair.substr(0, comma) << "\" cy=\""
                    << pair.substr(comma + 1) << "\" r=\"3\"/>\n";
            }
            out << "</g>\n";
        } else {
            out << "<polyline fill=\"none\" stroke=\"" << s.color
                << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
        }
        if (!s.label.empty()) {
            out << "<line x1=\"" << width - mr - 130 << "\" y1=\"" << legend_y << "\" x2=\""
                << width - mr - 110 << "\" y2=\"" << legend_y << "\" stroke=\"" << s.color
                << "\" stroke-width=\"2\"/>\n";
            out << "<text x=\"" << width - mr - 104 << "\" y=\"" << legend_y + 4
                << "\" font-size=\"11\">" << s.label << "</text>\n";
            legend_y += 16;
        }
    }
    out << "</svg>\n";
}

void save_snapshot(const Field2D& f, const SnapshotMeta& meta, const std::string& base_path) {
    {
        std::ofstream bin(base_path + ".bin", std::ios::binary);
        if (!bin)
            throw IoError("save_snapshot: cannot open " + base_path + ".bin");
        const auto& v = f.values();
        bin.write(reinterpret_cast<const char*>(v.data()),
                  static_cast<std::streamsize>(v.size() * sizeof(double)));
    }
    nlohmann::json j;
    j["t"] = meta.t;
    j["c"] = meta.c;
    j["kappa"] = meta.kappa;
    j["lx"] = f.grid().x.half_length;
    j["k0"] = f.grid().k0;
    j["nx"] = f.grid().x.n;
    j["ny"] = f.grid().ny;
    std::ofstream side(base_path + ".json");
    if (!side)
        throw IoError("save_snapshot: cannot open " + base_path + ".json");
    side << j.dump(2) << '\n';
}

Field2D load_snapshot(const std::string& base_path, SnapshotMeta* meta_out) {
    std::ifstream side(base_path + ".json");
    if (!side)
        throw IoError("load_snapshot: cannot open " + base_path + ".json");
    nlohmann::json j;
    side >> j;
    SnapshotMeta meta;
    meta.t = j.at("t");
    meta.c = j.at("c");
    meta.kappa = j.at("kappa");
    meta.lx = j.at("lx");
    meta.k0 = j.at("k0");
    meta.nx = j.at("nx");
    meta.ny = j.at("ny");
    if (meta_out)
        *meta_out = meta;

    auto grid = make_grid2(make_grid(meta.lx, meta.nx), meta.k0, meta.ny);
    std::vector<double> vals(static_cast<size_t>(meta.nx) * meta.ny);
    std::ifstream bin(base_path + ".bin", std::ios::binary);
    if (!bin)
        throw IoError("load_snapshot: cannot open " + base_path + ".bin");
    bin.read(reinterpret_cast<char*>(vals.data()),
             static_cast<std::streamsize>(vals.size() * sizeof(double)));
    if (!bin)
        throw IoError("load_snapshot: truncated " + base_path + ".bin");
    return Field2D::of_values(std::move(grid), std::move(vals));
}

} // namespace chkp::io
