#include "mnnr/config.hpp"
#include "mnnr/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mnnr;

TEST_SUITE("config_io") {

TEST_CASE("keys parse into typed fields") {
    ExperimentConfig c;
    c.set("lambda", "0.1");
    c.set("window", "100");
    c.set("policy", "toroidal");
    c.set("schemes", "NC, OF1, OF2(0.3), PH");
    c.set("scheme", "of2:0.25");
    c.set("r_grid", "0.5,1,5");
    c.set("fading", "none");
    c.set("lt_n_max", "12");
    c.set("emit", "csv,samples");
    CHECK(c.lambda == 0.1);
    CHECK(c.window_width == 100.0);
    CHECK(c.toroidal);
    REQUIRE(c.schemes.size() == 4);
    CHECK(c.schemes[2] == CooperationScheme::of2(0.3));
    CHECK(c.scheme == CooperationScheme::of2(0.25));
    CHECK(c.r_grid == std::vector<double>{0.5, 1.0, 5.0});
    CHECK(c.fading == FadingMode::none);
    CHECK(c.lt_n_max == std::size_t{12});
    CHECK(c.emits("samples"));
    CHECK_FALSE(c.emits("json"));
    c.set("lt_n_max", "auto");
    CHECK_FALSE(c.lt_n_max.has_value());
}

TEST_CASE("bad keys and values raise ConfigError") {
    ExperimentConfig c;
    CHECK_THROWS_AS(c.set("lamda", "1"), ConfigError);
    CHECK_THROWS_AS(c.set("lambda", "fast"), ConfigError);
    CHECK_THROWS_AS(c.set("replications", "-3"), ConfigError);
    CHECK_THROWS_AS(c.set("policy", "mirror"), ConfigError);
    CHECK_THROWS_AS(c.set("scheme", "XYZ"), ConfigError);
    CHECK_THROWS_AS(c.set("emit", "pdf"), ConfigError);
    c.set("beta", "2");
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ExperimentConfig{};
    c.set("margin", "30");
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("config files with comments") {
    const auto path = std::filesystem::temp_directory_path() / "mnnr_cfg_test.txt";
    {
        std::ofstream f(path);
        f << "# experiment\n\nlambda = 0.5   # per m^2\nseed=99\n  beta = 3.5\n";
    }
    ExperimentConfig c;
    c.load_file(path);
    CHECK(c.lambda == 0.5);
    CHECK(c.seed == 99);
    CHECK(c.beta == 3.5);
    {
        std::ofstream f(path);
        f << "lambda 0.5\n";
    }
    CHECK_THROWS_AS(c.load_file(path), ConfigError);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(c.load_file(path), ConfigError);
}

TEST_CASE("hash tracks results-relevant settings only") {
    ExperimentConfig a, b;
    CHECK(a.hash() == b.hash());
    CHECK(a.hash().size() == 16);
    b.threads = 8;
    b.out = "elsewhere";
    CHECK(a.hash() == b.hash());
    b.seed = 2;
    CHECK(a.hash() != b.hash());
    // Canonical text round-trips through set().
    ExperimentConfig c;
    std::istringstream in(b.canonical_text());
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        c.set(line.substr(0, eq), line.substr(eq + 1));
    }
    CHECK(c.canonical_text() == b.canonical_text());
}

TEST_CASE("derived settings") {
    ExperimentConfig c;
    c.lambda = 0.25;
    c.window_width = c.window_height = 100;
    CHECK(c.resolved_margin() == 10.0);
    CHECK(c.resolved_observation_radius() == 40.0);
    CHECK(c.observer() == Point2D{50, 50});
    c.lt_mean_count = 2.0;
    CHECK(c.laplace_window().area() * c.lambda == doctest::Approx(2.0));
    CHECK(c.radii().back() == doctest::Approx(4.0));
}

TEST_CASE("number formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.0, -2.5}) {
        const auto s = io::format_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(io::format_double(NAN) == "nan");
    CHECK(io::format_double(-INFINITY) == "-inf");
}

TEST_CASE("pattern and grouping CSV") {
    const Window w = Window::square(10);
    const PointPattern p({{1.5, 2.25}, {0.1, 9.9}, {5, 5}}, w, 0.03);
    std::stringstream ss;
    io::write_comment(ss, {"header line"});
    io::write_pattern_csv(ss, p);
    const auto back = io::read_pattern_csv(ss, w, 0.03);
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(back[i] == p[i]);

    std::ostringstream g;
    io::write_grouping_csv(g, GroupingResult{{2}, {{0, 1}}, {}}, 3);
    CHECK(g.str() == "index,class,partner1,partner2\n0,P,1,-1\n1,P,0,-1\n2,S,-1,-1\n");
    std::ostringstream t;
    io::write_grouping_csv(t, GroupingResult{{}, {}, {{0, 1, 2}}}, 3);
    CHECK(t.str() == "index,class,partner1,partner2\n0,T,1,2\n1,T,2,0\n2,T,0,1\n");

    std::istringstream bad("index,x,y\n0,1,1\n5,2,2\n");
    CHECK_THROWS(io::read_pattern_csv(bad, w, 1.0));
}

TEST_CASE("open_output reports the path") {
    try {
        io::open_output("/proc/definitely/not/here.csv");
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("/proc/definitely") != std::string::npos);
    }
}

}
