#pragma once

#include "mnnr/grouping.hpp"
#include "mnnr/interference.hpp"
#include "mnnr/point_process.hpp"
#include "mnnr/statistics.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mnnr::io {

/// Shortest round-trip decimal form of a double ("%.17g" trimmed), so reruns
/// are byte-identical.
std::string format_double(double v);

/// Opens `path` for writing, creating parent directories. Throws
/// std::runtime_error naming the path on failure.
std::ofstream open_output(const std::filesystem::path& path);

/// Writes "# <line>" for each non-empty provenance line.
void write_comment(std::ostream& out, const std::vector<std::string>& lines);

/// CSV `index,x,y`.
void write_pattern_csv(std::ostream& out, const PointPattern& pattern);

/// JSON sidecar with window, lambda and seed.
std::string pattern_sidecar_json(const PointPattern& pattern);

/// Reads a pattern CSV written by write_pattern_csv ('#' lines are skipped).
PointPattern read_pattern_csv(std::istream& in, const Window& window, double lambda);

/// CSV `index,class,partner1,partner2`; class in {S,P,T}, absent partners -1.
void write_grouping_csv(std::ostream& out, const GroupingResult& grouping, std::size_t n_atoms);

/// CSV `r,value,stderr`, plus one extra column per (name, values) pair.
void write_curve_csv(std::ostream& out, const EmpiricalCurve& curve,
                     const std::vector<std::pair<std::string, std::vector<double>>>& extra = {});

/// CSV `s,value,stderr`.
void write_laplace_csv(std::ostream& out, const std::vector<LaplacePoint>& points);

/// JSON `{statistic, p_value, n}`.
std::string ks_json(const KsResult& result);

}  // namespace mnnr::io
