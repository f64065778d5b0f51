#include "mnnr/commands.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace mnnr;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("mnnr_cmd_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::directory_iterator(dir)) files[e.path().filename().string()] = slurp(e.path());
    return files;
}

ExperimentConfig small_config(const std::string& name) {
    ExperimentConfig c;
    c.lambda = 1.0;
    c.window_width = c.window_height = 12.0;
    c.margin = 2.0;
    c.replications = 3;
    c.probes = 200;
    c.radii_count = 8;
    c.r_grid = {0.5, 1.0};
    c.schemes = {CooperationScheme::nc(), CooperationScheme::of1()};
    c.lt_samples = 1000;
    c.lt_empirical_reps = 300;
    c.s_grid = {0.0, 1.0};
    c.out = scratch(name);
    return c;
}

}  // namespace

TEST_SUITE("commands") {

TEST_CASE("sample writes one triple of files per replication") {
    auto c = small_config("sample");
    cmd_sample(c);
    for (int rep = 0; rep < 3; ++rep) {
        const auto stem = "pattern_000" + std::to_string(rep);
        REQUIRE(fs::exists(c.out / (stem + ".csv")));
        const auto meta = nlohmann::json::parse(slurp(c.out / (stem + ".json")));
        CHECK(meta["seed"]["stream_id"] == rep);
        CHECK(meta["_meta"]["config_hash"] == c.hash());
        REQUIRE(fs::exists(c.out / ("grouping_000" + std::to_string(rep) + ".csv")));
    }
    const auto first = snapshot(c.out);
    CHECK(first.at("pattern_0000.csv").rfind("# mnnr ", 0) == 0);
    cmd_sample(c);
    CHECK(snapshot(c.out) == first);
}

TEST_CASE("zero intensity gives header-only files") {
    auto c = small_config("empty");
    c.lambda = 0.0;
    c.margin = 0.0;
    c.replications = 1;
    cmd_sample(c);
    CHECK(slurp(c.out / "pattern_0000.csv") == "# mnnr " + tool_version() + " config=" + c.hash() + "\nindex,x,y\n");
    CHECK(slurp(c.out / "grouping_0000.csv").find("\n0,") == std::string::npos);
}

TEST_CASE("outputs do not depend on the worker count") {
    using Command = void (*)(const ExperimentConfig&);
    const std::pair<const char*, Command> commands[] = {
        {"stats", cmd_stats}, {"interference", cmd_interference}, {"laplace", cmd_laplace}};
    for (const auto& [name, run] : commands) {
        CAPTURE(name);
        auto c = small_config(std::string(name) + "_1");
        c.emit = {"csv", "json", "samples"};
        c.threads = 1;
        run(c);
        const auto one = snapshot(c.out);
        c.out = scratch(std::string(name) + "_8");
        c.threads = 8;
        run(c);
        CHECK(snapshot(c.out) == one);
    }
}

TEST_CASE("stats writes every curve") {
    auto c = small_config("stats");
    cmd_stats(c);
    for (const char* f : {"fractions.json", "voronoi.json", "G_singles.csv", "F_pairs.csv", "J_singles.csv",
                          "G_reference_pairs.csv", "config.txt"})
        CHECK(fs::exists(c.out / f));
    CHECK_FALSE(fs::exists(c.out / "ks.json"));
    const auto fr = nlohmann::json::parse(slurp(c.out / "fractions.json"));
    CHECK(fr["paired"]["value"].get<double>() + fr["single"]["value"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("figure configurations") {
    CHECK(figure_ids().size() == 10);
    const auto f6 = figure_config("fig6");
    CHECK(f6.lambda == 0.1);
    CHECK(f6.window_width == 100.0);
    CHECK(f6.window_height == 100.0);
    CHECK(f6.fading == FadingMode::none);
    CHECK_THROWS_AS(figure_config("fig2"), ConfigError);
    try {
        figure_config("fig9");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("fig4c") != std::string::npos);
    }

    auto c = figure_config("fig4c");
    c.replications = 4;
    c.probes = 100;
    c.out = scratch("fig4c");
    cmd_reproduce("fig4c", c);
    const auto j = slurp(c.out / "fig4c.csv");
    CHECK(j.find("reference_analytic") != std::string::npos);

    c = figure_config("fig1");
    c.out = scratch("fig1");
    cmd_reproduce("fig1", c);
    CHECK(fs::exists(c.out / "nn_graph.csv"));
}

}
