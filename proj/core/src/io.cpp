#include "mnnr/io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mnnr::io {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

void write_comment(std::ostream& out, const std::vector<std::string>& lines) {
    for (const auto& line : lines)
        if (!line.empty()) out << "# " << line << '\n';
}

void write_pattern_csv(std::ostream& out, const PointPattern& pattern) {
    out << "index,x,y\n";
    for (std::size_t i = 0; i < pattern.size(); ++i)
        out << i << ',' << format_double(pattern[i].x) << ',' << format_double(pattern[i].y) << '\n';
}

std::string pattern_sidecar_json(const PointPattern& pattern) {
    const Window& w = pattern.window();
    nlohmann::ordered_json j;
    j["window"] = {{"x", w.min_corner().x}, {"y", w.min_corner().y},
                   {"width", w.width()}, {"height", w.height()}};
    j["lambda"] = pattern.density_lambda();
    j["count"] = pattern.size();
    if (pattern.seed())
        j["seed"] = {{"master_seed", pattern.seed()->master_seed},
                     {"stream_id", pattern.seed()->stream_id},
                     {"tag", pattern.seed()->tag}};
    else
        j["seed"] = nullptr;
    return j.dump(2) + "\n";
}

PointPattern read_pattern_csv(std::istream& in, const Window& window, double lambda) {
    std::vector<Point2D> pts;
    std::string line;
    bool header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line != "index,x,y") throw std::runtime_error("pattern CSV: expected header index,x,y");
            header = true;
            continue;
        }
        std::istringstream row(line);
        std::string idx, xs, ys;
        if (!std::getline(row, idx, ',') || !std::getline(row, xs, ',') || !std::getline(row, ys))
            throw std::runtime_error("pattern CSV: malformed line " + std::to_string(line_no));
        if (std::stoull(idx) != pts.size())
            throw std::runtime_error("pattern CSV: indices must be 0..n-1 in order (line " +
                                     std::to_string(line_no) + ")");
        pts.push_back({std::stod(xs), std::stod(ys)});
    }
    if (!header) throw std::runtime_error("pattern CSV: missing header");
    return PointPattern(std::move(pts), window, lambda);
}

void write_grouping_csv(std::ostream& out, const GroupingResult& grouping, std::size_t n_atoms) {
    const auto roles = atom_roles(grouping, n_atoms);
    auto partner = [](std::size_t p) {
        return p == static_cast<std::size_t>(-1) ? std::string("-1") : std::to_string(p);
    };
    out << "index,class,partner1,partner2\n";
    for (std::size_t i = 0; i < n_atoms; ++i)
        out << i << ',' << static_cast<char>(roles[i].group) << ',' << partner(roles[i].partner1)
            << ',' << partner(roles[i].partner2) << '\n';
}

void write_curve_csv(std::ostream& out, const EmpiricalCurve& curve,
                     const std::vector<std::pair<std::string, std::vector<double>>>& extra) {
    out << "r,value,stderr";
    for (const auto& [name, values] : extra) {
        if (values.size() != curve.radii.size())
            throw std::domain_error("write_curve_csv: column " + name + " has the wrong length");
        out << ',' << name;
    }
    out << '\n';
    for (std::size_t k = 0; k < curve.radii.size(); ++k) {
        out << format_double(curve.radii[k]) << ',' << format_double(curve.values[k]) << ','
            << format_double(curve.std_error[k]);
        for (const auto& col : extra) out << ',' << format_double(col.second[k]);
        out << '\n';
    }
}

void write_laplace_csv(std::ostream& out, const std::vector<LaplacePoint>& points) {
    out << "s,value,stderr\n";
    for (const auto& p : points)
        out << format_double(p.s) << ',' << format_double(p.value) << ',' << format_double(p.std_error)
            << '\n';
}

std::string ks_json(const KsResult& result) {
    nlohmann::ordered_json j;
    j["statistic"] = result.statistic;
    j["p_value"] = result.p_value;
    j["n"] = result.n;
    return j.dump(2) + "\n";
}

}  // namespace mnnr::io
