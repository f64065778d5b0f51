// mnnr: command line driver for the base-station grouping simulator.

#include "mnnr/commands.hpp"
#include "mnnr/config.hpp"
#include "mnnr/signal_model.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::string out;
    std::vector<std::string> sets;
};

void apply(mnnr::ExperimentConfig& cfg, const Overrides& o) {
    if (!o.config_path.empty()) cfg.load_file(o.config_path);
    for (const auto& kv : o.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw mnnr::ConfigError("--set expects key=value, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (o.seed) cfg.seed = *o.seed;
    if (o.threads) cfg.threads = *o.threads;
    if (!o.out.empty()) cfg.out = o.out;
    cfg.validate();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mutual nearest-neighbour base-station grouping simulator"};
    app.set_version_flag("--version", mnnr::tool_version());
    app.require_subcommand(1);

    Overrides o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "key = value config file")->check(CLI::ExistingFile);
        sub->add_option("--seed", o.seed, "master seed");
        sub->add_option("--threads", o.threads, "worker threads (0 = all cores); outputs do not depend on it");
        sub->add_option("--out", o.out, "output directory");
        sub->add_option("--set", o.sets, "override one config key, e.g. --set lambda=0.1")->take_all();
    };

    auto* sample = app.add_subcommand("sample", "write pattern and grouping CSVs per replication");
    auto* stats = app.add_subcommand("stats", "class fractions, Voronoi shares, G/F/J curves, KS tests");
    auto* interference = app.add_subcommand("interference", "expected interference: Monte Carlo vs quadrature");
    auto* laplace = app.add_subcommand("laplace", "Laplace transform: series vs empirical");
    auto* reproduce = app.add_subcommand("reproduce", "run the canned configuration for a figure");
    auto* keys = app.add_subcommand("keys", "list config keys with their defaults");
    std::string figure;
    reproduce->add_option("figure", figure, "figure id")->required();
    for (auto* sub : {sample, stats, interference, laplace, reproduce}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        if (keys->parsed()) {
            std::cout << mnnr::ExperimentConfig{}.canonical_text() << "out = out\nthreads = 1\n";
            return 0;
        }
        mnnr::ExperimentConfig cfg = reproduce->parsed() ? mnnr::figure_config(figure) : mnnr::ExperimentConfig{};
        apply(cfg, o);
        if (sample->parsed()) mnnr::cmd_sample(cfg);
        else if (stats->parsed()) mnnr::cmd_stats(cfg);
        else if (interference->parsed()) mnnr::cmd_interference(cfg);
        else if (laplace->parsed()) mnnr::cmd_laplace(cfg);
        else mnnr::cmd_reproduce(figure, cfg);
    } catch (const mnnr::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const mnnr::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
