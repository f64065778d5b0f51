#include "mnnr/config.hpp"

#include "mnnr/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace mnnr {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

double parse_double(std::string_view key, std::string_view text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v))
        throw ConfigError("key '" + std::string(key) + "': expected a number, got '" + t + "'");
    return v;
}

std::uint64_t parse_u64(std::string_view key, std::string_view text) {
    const std::string t = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
        throw ConfigError("key '" + std::string(key) + "': expected a non-negative integer, got '" +
                          t + "'");
    return v;
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> items;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            items.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    items.push_back(trim(cur));
    items.erase(std::remove(items.begin(), items.end(), std::string{}), items.end());
    return items;
}

std::vector<double> parse_doubles(std::string_view key, std::string_view text) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) out.push_back(parse_double(key, item));
    if (out.empty()) throw ConfigError("key '" + std::string(key) + "': empty list");
    return out;
}

bool is_auto(std::string_view text) { return lower(trim(text)) == "auto"; }

std::string join_doubles(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + io::format_double(xs[i]);
    return s;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view, std::string_view)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"lambda", [](auto& c, auto k, auto v) { c.lambda = parse_double(k, v); }},
        {"window_x", [](auto& c, auto k, auto v) { c.window_x = parse_double(k, v); }},
        {"window_y", [](auto& c, auto k, auto v) { c.window_y = parse_double(k, v); }},
        {"window_width", [](auto& c, auto k, auto v) { c.window_width = parse_double(k, v); }},
        {"window_height", [](auto& c, auto k, auto v) { c.window_height = parse_double(k, v); }},
        {"window", [](auto& c, auto k, auto v) {
             c.window_width = c.window_height = parse_double(k, v);
         }},
        {"policy", [](auto& c, auto, auto v) {
             const auto p = lower(trim(v));
             if (p == "guard" || p == "guard-margin") c.toroidal = false;
             else if (p == "toroidal" || p == "torus") c.toroidal = true;
             else throw ConfigError("key 'policy': expected guard or toroidal, got '" + p + "'");
         }},
        {"margin", [](auto& c, auto k, auto v) {
             if (is_auto(v)) c.margin.reset();
             else c.margin = parse_double(k, v);
         }},
        {"replications", [](auto& c, auto k, auto v) { c.replications = parse_u64(k, v); }},
        {"seed", [](auto& c, auto k, auto v) { c.seed = parse_u64(k, v); }},
        {"threads", [](auto& c, auto k, auto v) { c.threads = static_cast<unsigned>(parse_u64(k, v)); }},
        {"k", [](auto& c, auto k, auto v) { c.k = static_cast<int>(parse_u64(k, v)); }},
        {"scheme", [](auto& c, auto, auto v) {
             try {
                 c.scheme = parse_scheme(trim(v));
             } catch (const std::invalid_argument& e) {
                 throw ConfigError(std::string("key 'scheme': ") + e.what());
             }
         }},
        {"schemes", [](auto& c, auto, auto v) {
             std::vector<CooperationScheme> list;
             try {
                 for (const auto& item : split_list(v)) list.push_back(parse_scheme(item));
             } catch (const std::invalid_argument& e) {
                 throw ConfigError(std::string("key 'schemes': ") + e.what());
             }
             if (list.empty()) throw ConfigError("key 'schemes': empty list");
             c.schemes = list;
         }},
        {"beta", [](auto& c, auto k, auto v) { c.beta = parse_double(k, v); }},
        {"power", [](auto& c, auto k, auto v) { c.power = parse_double(k, v); }},
        {"exclusion_radius", [](auto& c, auto k, auto v) { c.exclusion_radius = parse_double(k, v); }},
        {"fading", [](auto& c, auto, auto v) {
             try {
                 c.fading = parse_fading(trim(v));
             } catch (const std::invalid_argument& e) {
                 throw ConfigError(std::string("key 'fading': ") + e.what());
             }
         }},
        {"radii_count", [](auto& c, auto k, auto v) { c.radii_count = parse_u64(k, v); }},
        {"radii_max", [](auto& c, auto k, auto v) {
             if (is_auto(v)) c.radii_max.reset();
             else c.radii_max = parse_double(k, v);
         }},
        {"probes", [](auto& c, auto k, auto v) { c.probes = parse_u64(k, v); }},
        {"ks_bootstrap", [](auto& c, auto k, auto v) { c.ks_bootstrap = parse_u64(k, v); }},
        {"r_grid", [](auto& c, auto k, auto v) { c.r_grid = parse_doubles(k, v); }},
        {"observation_radius", [](auto& c, auto k, auto v) {
             if (is_auto(v)) c.observation_radius.reset();
             else c.observation_radius = parse_double(k, v);
         }},
        {"s_grid", [](auto& c, auto k, auto v) { c.s_grid = parse_doubles(k, v); }},
        {"lt_mean_count", [](auto& c, auto k, auto v) { c.lt_mean_count = parse_double(k, v); }},
        {"lt_samples", [](auto& c, auto k, auto v) { c.lt_samples = parse_u64(k, v); }},
        {"lt_epsilon", [](auto& c, auto k, auto v) { c.lt_epsilon = parse_double(k, v); }},
        {"lt_n_max", [](auto& c, auto k, auto v) {
             if (is_auto(v)) c.lt_n_max.reset();
             else c.lt_n_max = parse_u64(k, v);
         }},
        {"lt_empirical_reps", [](auto& c, auto k, auto v) { c.lt_empirical_reps = parse_u64(k, v); }},
        {"emit", [](auto& c, auto k, auto v) {
             std::set<std::string> kinds;
             for (const auto& item : split_list(v)) {
                 const auto s = lower(item);
                 if (s != "csv" && s != "json" && s != "samples")
                     throw ConfigError("key '" + std::string(k) + "': unknown output kind '" + s + "'");
                 kinds.insert(s);
             }
             c.emit = kinds;
         }},
        {"out", [](auto& c, auto, auto v) { c.out = trim(v); }},
    };
    return table;
}

}  // namespace

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& [k, _] : setters()) keys.push_back(k);
    return keys;
}

void ExperimentConfig::set(std::string_view key, std::string_view value) {
    const auto it = setters().find(lower(trim(key)));
    if (it == setters().end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
    it->second(*this, it->first, value);
}

void ExperimentConfig::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash_pos = line.find('#'); hash_pos != std::string::npos) line.erase(hash_pos);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
        try {
            set(line.substr(0, eq), line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (!(lambda >= 0.0)) fail("lambda must be >= 0");
    if (!(window_width > 0.0) || !(window_height > 0.0)) fail("window sides must be > 0");
    if (margin && !(*margin >= 0.0)) fail("margin must be >= 0");
    if (replications < 1) fail("replications must be >= 1");
    if (k != 2 && k != 3) fail("k must be 2 or 3");
    if (!(beta > 2.0)) fail("beta must be > 2");
    if (!(power > 0.0)) fail("power must be > 0");
    if (!(exclusion_radius >= 0.0)) fail("exclusion_radius must be >= 0");
    if (radii_count < 2) fail("radii_count must be >= 2");
    if (radii_max && !(*radii_max > 0.0)) fail("radii_max must be > 0");
    if (probes < 1) fail("probes must be >= 1");
    for (double r : r_grid)
        if (!(r > 0.0)) fail("r_grid entries must be > 0");
    for (double s : s_grid)
        if (!(s >= 0.0)) fail("s_grid entries must be >= 0");
    if (!(lt_mean_count > 0.0)) fail("lt_mean_count must be > 0");
    if (lt_samples < 1000) fail("lt_samples must be >= 1000");
    if (!(lt_epsilon > 0.0 && lt_epsilon < 1.0)) fail("lt_epsilon must lie in (0, 1)");
    if (lt_empirical_reps < 1) fail("lt_empirical_reps must be >= 1");
    for (const auto& s : schemes)
        if (!(s.q >= 0.0 && s.q <= 1.0)) fail("OF2 probability must lie in [0, 1]");
    try {
        validate_policy(policy(), window());
    } catch (const std::domain_error& e) {
        fail(e.what());
    }
}

std::string ExperimentConfig::canonical_text() const {
    std::ostringstream s;
    auto opt = [](const auto& o) { return o ? io::format_double(static_cast<double>(*o)) : std::string("auto"); };
    std::string scheme_list;
    for (std::size_t i = 0; i < schemes.size(); ++i) scheme_list += (i ? "," : "") + to_string(schemes[i]);
    std::string emit_list;
    for (const auto& e : emit) emit_list += (emit_list.empty() ? "" : ",") + e;
    s << "beta = " << io::format_double(beta) << '\n'
      << "emit = " << emit_list << '\n'
      << "exclusion_radius = " << io::format_double(exclusion_radius) << '\n'
      << "fading = " << to_string(fading) << '\n'
      << "k = " << k << '\n'
      << "ks_bootstrap = " << ks_bootstrap << '\n'
      << "lambda = " << io::format_double(lambda) << '\n'
      << "lt_empirical_reps = " << lt_empirical_reps << '\n'
      << "lt_epsilon = " << io::format_double(lt_epsilon) << '\n'
      << "lt_mean_count = " << io::format_double(lt_mean_count) << '\n'
      << "lt_n_max = " << opt(lt_n_max) << '\n'
      << "lt_samples = " << lt_samples << '\n'
      << "margin = " << opt(margin) << '\n'
      << "observation_radius = " << opt(observation_radius) << '\n'
      << "policy = " << (toroidal ? "toroidal" : "guard") << '\n'
      << "power = " << io::format_double(power) << '\n'
      << "probes = " << probes << '\n'
      << "r_grid = " << join_doubles(r_grid) << '\n'
      << "radii_count = " << radii_count << '\n'
      << "radii_max = " << opt(radii_max) << '\n'
      << "replications = " << replications << '\n'
      << "s_grid = " << join_doubles(s_grid) << '\n'
      << "scheme = " << to_string(scheme) << '\n'
      << "schemes = " << scheme_list << '\n'
      << "seed = " << seed << '\n'
      << "window_height = " << io::format_double(window_height) << '\n'
      << "window_width = " << io::format_double(window_width) << '\n'
      << "window_x = " << io::format_double(window_x) << '\n'
      << "window_y = " << io::format_double(window_y) << '\n';
    return s.str();
}

std::string ExperimentConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : canonical_text()) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Window ExperimentConfig::window() const {
    try {
        return Window({window_x, window_y}, window_width, window_height);
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
}

double ExperimentConfig::resolved_margin() const {
    if (margin) return *margin;
    return lambda > 0.0 ? default_margin(lambda) : 0.0;
}

BoundaryPolicy ExperimentConfig::policy() const {
    if (toroidal) return Toroidal{};
    return GuardMargin{resolved_margin()};
}

ReplicationPlan ExperimentConfig::plan() const {
    ReplicationPlan p;
    p.n_replications = replications;
    p.lambda = lambda;
    p.window = window();
    p.policy = policy();
    p.seed = SeedSpec{seed, 0, 0};
    p.threads = threads;
    return p;
}

std::vector<double> ExperimentConfig::radii() const {
    const double r_max = radii_max ? *radii_max : 2.0 / std::sqrt(lambda);
    return radius_grid(r_max, radii_count);
}

PathLossModel ExperimentConfig::pathloss() const { return {beta, power, exclusion_radius}; }

Point2D ExperimentConfig::observer() const { return window().center(); }

double ExperimentConfig::resolved_observation_radius() const {
    if (observation_radius) return *observation_radius;
    const Window inner = interior(window(), policy());
    return 0.5 * std::min(inner.width(), inner.height());
}

Window ExperimentConfig::laplace_window() const {
    const double side = std::sqrt(lt_mean_count / lambda);
    return Window::centered(observer(), side, side);
}

}  // namespace mnnr
