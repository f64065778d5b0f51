#include "mnnr/commands.hpp"

#include "mnnr/analytic.hpp"
#include "mnnr/io.hpp"
#include "mnnr/parallel.hpp"
#include "mnnr/spatial_index.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>

namespace mnnr {

namespace {

using nlohmann::ordered_json;

std::string header_line(const ExperimentConfig& config) {
    return "mnnr " + tool_version() + " config=" + config.hash();
}

std::ofstream open_csv(const ExperimentConfig& config, const std::string& name) {
    auto out = io::open_output(config.out / name);
    io::write_comment(out, {header_line(config)});
    return out;
}

void write_json(const ExperimentConfig& config, const std::string& name, ordered_json body) {
    ordered_json doc;
    doc["_meta"] = {{"tool", "mnnr"}, {"version", tool_version()}, {"config_hash", config.hash()}};
    for (auto& [k, v] : body.items()) doc[k] = v;
    auto out = io::open_output(config.out / name);
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + (config.out / name).string());
}

void write_config_record(const ExperimentConfig& config) {
    auto out = io::open_output(config.out / "config.txt");
    io::write_comment(out, {header_line(config)});
    out << config.canonical_text();
}

ordered_json proportion_json(const Proportion& p) { return {{"value", p.value}, {"stderr", p.std_error}}; }

std::string indexed(const char* stem, std::size_t i, const char* ext) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%04zu.%s", stem, i, ext);
    return buf;
}

// Accumulated sums for one block of replications, reduced in block order.
struct Moments {
    std::vector<double> sum, sum_sq;
    explicit Moments(std::size_t n = 0) : sum(n, 0.0), sum_sq(n, 0.0) {}
    void add(std::size_t k, double v) {
        sum[k] += v;
        sum_sq[k] += v * v;
    }
    void merge(const Moments& o) {
        for (std::size_t k = 0; k < sum.size(); ++k) {
            sum[k] += o.sum[k];
            sum_sq[k] += o.sum_sq[k];
        }
    }
};

constexpr std::size_t kBlock = 256;

std::pair<double, double> mean_and_se(double sum, double sum_sq, std::size_t n) {
    const double m = static_cast<double>(n);
    const double mean = sum / m;
    if (n < 2) return {mean, 0.0};
    const double var = std::max(0.0, (sum_sq - m * mean * mean) / (m - 1.0));
    return {mean, std::sqrt(var / m)};
}

// Pair integrals are three levels deep; 1e-6 keeps them far below Monte Carlo
// error at a fraction of the cost.
QuadratureSpec quad_with_outer(double outer, double rel_tol = 1e-9) {
    QuadratureSpec q;
    q.rel_tol = rel_tol;
    q.outer_radius = outer;
    return q;
}

}  // namespace

std::string tool_version() { return MNNR_VERSION; }

std::vector<InterferenceTable> interference_study(const ExperimentConfig& config,
                                                  std::span<const double> betas,
                                                  InterferenceSamples* samples) {
    config.validate();
    if (config.k != 2) throw ConfigError("interference requires k = 2 (pairs and singles only)");
    const ReplicationPlan plan = config.plan();
    const Point2D observer = config.observer();
    const double L = config.resolved_observation_radius();
    if (!(L > 0.0)) throw ConfigError("observation radius must be > 0");
    const auto& radii = config.r_grid;
    const auto& schemes = config.schemes;
    const std::size_t n_r = radii.size(), n_s = schemes.size(), n_b = betas.size();
    // Slot layout per beta: [singles | scheme 0 | ... ] x radii.
    const std::size_t per_beta = (1 + n_s) * n_r;
    auto slot = [&](std::size_t b, std::size_t field, std::size_t r) { return b * per_beta + field * n_r + r; };

    if (samples) samples->samples.assign(plan.n_replications, {});
    const std::size_t n_blocks = (plan.n_replications + kBlock - 1) / kBlock;
    std::vector<Moments> blocks(n_blocks, Moments(n_b * per_beta));
    parallel_for(n_blocks, plan.threads, [&](std::size_t blk) {
        Moments& acc = blocks[blk];
        const std::size_t end = std::min(plan.n_replications, (blk + 1) * kBlock);
        for (std::size_t rep = blk * kBlock; rep < end; ++rep) {
            const Realization real = realize(plan, rep);
            const LinkDraws draws =
                draw_links(real.pattern.size(), real.grouping.pairs.size(), config.power, config.fading,
                           plan.seed.with_stream(rep).with_tag(stream_tag::fading));
            for (std::size_t b = 0; b < n_b; ++b) {
                const PathLossModel pl{betas[b], config.power, 0.0};
                for (std::size_t s = 0; s < n_s; ++s) {
                    const auto prof = interference_profile(real.pattern, real.grouping, observer, schemes[s],
                                                           pl, draws, radii, L);
                    for (std::size_t r = 0; r < n_r; ++r) {
                        if (s == 0) acc.add(slot(b, 0, r), prof[r].i1);
                        acc.add(slot(b, 1 + s, r), prof[r].i2);
                    }
                }
            }
            if (samples) {
                const PathLossModel pl = config.pathloss();
                samples->samples[rep] = evaluate_interference(real.pattern, real.grouping, observer,
                                                              config.scheme, pl, draws, L);
            }
        }
    });
    Moments total(n_b * per_beta);
    for (const auto& b : blocks) total.merge(b);

    std::vector<InterferenceTable> tables;
    for (std::size_t b = 0; b < n_b; ++b) {
        InterferenceTable t;
        t.beta = betas[b];
        t.observation_radius = L;
        t.replications = plan.n_replications;
        for (std::size_t r = 0; r < n_r; ++r) {
            const PathLossModel pl{betas[b], config.power, radii[r]};
            InterferenceRow row;
            row.exclusion_radius = radii[r];
            std::tie(row.singles_mc_mean, row.singles_mc_std_error) =
                mean_and_se(total.sum[slot(b, 0, r)], total.sum_sq[slot(b, 0, r)], plan.n_replications);
            if (radii[r] < L) {
                row.singles_quadrature = expected_interference_singles(config.lambda, pl, quad_with_outer(L));
                row.singles_closed_form = expected_interference_singles_closed_form(config.lambda, pl, L);
            }
            row.singles_quadrature_plane = expected_interference_singles(config.lambda, pl, quad_with_outer(INFINITY));
            // PH and NC share the same integrand; integrate it once.
            std::map<std::string, std::pair<double, double>> cache;
            for (std::size_t s = 0; s < n_s; ++s) {
                SchemeColumn col;
                col.scheme = schemes[s];
                std::tie(col.mc_mean, col.mc_std_error) = mean_and_se(
                    total.sum[slot(b, 1 + s, r)], total.sum_sq[slot(b, 1 + s, r)], plan.n_replications);
                const CooperationScheme key_scheme =
                    col.scheme.kind == CooperationScheme::Kind::ph ? CooperationScheme::nc() : col.scheme;
                const std::string key = to_string(key_scheme);
                if (!cache.count(key)) {
                    const double windowed =
                        radii[r] < L ? expected_interference_pairs(config.lambda, pl, key_scheme,
                                                                   quad_with_outer(L, 1e-6), config.fading)
                                     : 0.0;
                    const double plane = expected_interference_pairs(
                        config.lambda, pl, key_scheme, quad_with_outer(INFINITY, 1e-6), config.fading);
                    cache[key] = {windowed, plane};
                }
                std::tie(col.quadrature, col.quadrature_plane) = cache[key];
                row.pairs.push_back(col);
            }
            t.rows.push_back(std::move(row));
        }
        tables.push_back(std::move(t));
    }
    return tables;
}

LaplaceComparison laplace_study(const ExperimentConfig& config) {
    config.validate();
    if (config.lambda <= 0.0) throw ConfigError("laplace requires lambda > 0");
    LaplaceComparison out;
    out.window = config.laplace_window();
    const Point2D observer = out.window.center();
    const PathLossModel pl = config.pathloss();

    LaplaceSeriesSpec spec;
    spec.n_max = config.lt_n_max;
    spec.epsilon = config.lt_epsilon;
    spec.mc_samples_per_term = config.lt_samples;
    spec.s_grid = config.s_grid;
    spec.seed = SeedSpec{config.seed, 0, 0};
    spec.threads = config.threads;
    spec.fading = config.fading;
    out.singles = laplace_transform_singles(config.lambda, out.window, observer, pl, spec);
    out.pairs = laplace_transform_pairs(config.lambda, out.window, observer, pl, config.scheme, spec);

    const std::size_t reps = config.lt_empirical_reps;
    std::vector<double> i1(reps), i2(reps);
    const SeedSpec base{config.seed, 0, 0};
    const BoundaryPolicy inside = GuardMargin{0.0};
    parallel_for(reps, config.threads, [&](std::size_t rep) {
        const PointPattern pattern =
            sample_ppp(config.lambda, out.window, base.with_stream(rep).with_tag(stream_tag::pattern));
        const GroupingResult grouping = classify(pattern, inside, 2);
        const LinkDraws draws = draw_links(pattern.size(), grouping.pairs.size(), config.power, config.fading,
                                           base.with_stream(rep).with_tag(stream_tag::fading));
        const auto s = evaluate_interference(pattern, grouping, observer, config.scheme, pl, draws);
        i1[rep] = s.i1;
        i2[rep] = s.i2;
    });
    out.empirical_singles = empirical_laplace(i1, config.s_grid);
    out.empirical_pairs = empirical_laplace(i2, config.s_grid);
    out.empirical_replications = reps;
    return out;
}

void cmd_sample(const ExperimentConfig& config) {
    config.validate();
    write_config_record(config);
    const ReplicationPlan plan = config.plan();
    for (std::size_t rep = 0; rep < plan.n_replications; ++rep) {
        const PointPattern pattern =
            sample_ppp(plan.lambda, plan.window, plan.seed.with_stream(rep).with_tag(stream_tag::pattern));
        const GroupingResult grouping = classify(pattern, plan.policy, config.k);
        {
            auto out = open_csv(config, indexed("pattern", rep, "csv"));
            io::write_pattern_csv(out, pattern);
        }
        {
            auto out = io::open_output(config.out / indexed("pattern", rep, "json"));
            auto sidecar = ordered_json::parse(io::pattern_sidecar_json(pattern));
            ordered_json doc;
            doc["_meta"] = {{"tool", "mnnr"}, {"version", tool_version()}, {"config_hash", config.hash()}};
            for (auto& [k, v] : sidecar.items()) doc[k] = v;
            out << doc.dump(2) << '\n';
        }
        {
            auto out = open_csv(config, indexed("grouping", rep, "csv"));
            io::write_grouping_csv(out, grouping, pattern.size());
        }
    }
}

namespace {

struct CurveSet {
    EmpiricalCurve g, f, j;
};

CurveSet curves_for(const ReplicationPlan& plan, ProcessSelector which, const std::vector<double>& radii,
                    std::size_t probes) {
    CurveSet c;
    c.g = estimate_nn_function(plan, which, radii);
    c.f = estimate_empty_space(plan, which, radii, probes);
    c.j = j_function(c.g, c.f);
    return c;
}

std::vector<double> reference_cdf(const std::vector<double>& radii, double lambda_i) {
    std::vector<double> out;
    for (double r : radii) out.push_back(nn_cdf_reference(r, lambda_i));
    return out;
}

}  // namespace

void cmd_stats(const ExperimentConfig& config) {
    config.validate();
    if (config.k != 2) throw ConfigError("stats requires k = 2");
    write_config_record(config);
    const ReplicationPlan plan = config.plan();
    const auto radii = config.radii();
    const double lam1 = (1.0 - p_star()) * config.lambda;
    const double lam2 = p_star() * config.lambda;

    const ClassFractions fr = estimate_class_fractions(plan);
    write_json(config, "fractions.json",
               {{"single", proportion_json(fr.single)},
                {"paired", proportion_json(fr.paired)},
                {"single_intensity", proportion_json(fr.single_intensity)},
                {"paired_intensity", proportion_json(fr.paired_intensity)},
                {"p_star", p_star()},
                {"n_atoms", fr.n_atoms},
                {"n_replications", fr.n_replications}});

    const VoronoiShares vs = estimate_voronoi_shares(plan, config.probes);
    write_json(config, "voronoi.json",
               {{"singles", proportion_json(vs.singles)},
                {"pairs", proportion_json(vs.pairs)},
                {"n_probes", vs.n_probes}});

    struct Target {
        std::string name;
        ProcessSelector which;
        std::optional<double> reference_lambda;
    };
    const std::vector<Target> targets{
        {"singles", ProcessSelector::singles(), std::nullopt},
        {"pairs", ProcessSelector::pairs(), std::nullopt},
        {"reference_singles", ProcessSelector::reference(lam1), lam1},
        {"reference_pairs", ProcessSelector::reference(lam2), lam2},
    };
    for (const auto& t : targets) {
        const CurveSet c = curves_for(plan, t.which, radii, config.probes);
        std::vector<std::pair<std::string, std::vector<double>>> g_extra, f_extra, j_extra;
        if (t.name == "pairs") {
            std::vector<double> analytic;
            for (double r : radii) analytic.push_back(nn_cdf_pairs(r, config.lambda));
            g_extra.emplace_back("analytic", analytic);
        }
        if (t.reference_lambda) {
            g_extra.emplace_back("analytic", reference_cdf(radii, *t.reference_lambda));
            f_extra.emplace_back("analytic", reference_cdf(radii, *t.reference_lambda));
            j_extra.emplace_back("analytic", std::vector<double>(c.j.radii.size(), 1.0));
        }
        auto g = open_csv(config, "G_" + t.name + ".csv");
        io::write_curve_csv(g, c.g, g_extra);
        auto f = open_csv(config, "F_" + t.name + ".csv");
        io::write_curve_csv(f, c.f, f_extra);
        auto j = open_csv(config, "J_" + t.name + ".csv");
        io::write_curve_csv(j, c.j, j_extra);
    }

    if (plan.n_replications >= 100) {
        ordered_json ks;
        for (const auto& t : targets) {
            if (t.reference_lambda) continue;
            const KsResult r = ks_poisson_count_test(plan, t.which, config.ks_bootstrap);
            ks[t.name] = ordered_json::parse(io::ks_json(r));
        }
        write_json(config, "ks.json", ks);
    } else {
        std::cerr << "stats: KS test skipped (needs at least 100 replications)\n";
    }
}

namespace {

std::string column_name(const CooperationScheme& s) {
    std::string name = to_string(s);
    std::replace(name.begin(), name.end(), '(', '_');
    name.erase(std::remove(name.begin(), name.end(), ')'), name.end());
    return name;
}

void write_interference_csv(const ExperimentConfig& config, const std::string& name,
                            const InterferenceTable& t) {
    auto out = open_csv(config, name);
    io::write_comment(out, {"beta=" + io::format_double(t.beta) +
                            " observation_radius=" + io::format_double(t.observation_radius) +
                            " replications=" + std::to_string(t.replications)});
    out << "R,I1_mc,I1_se,I1_quad,I1_quad_plane,I1_closed";
    for (const auto& c : t.rows.front().pairs) {
        const auto n = column_name(c.scheme);
        out << ",I2_" << n << "_mc,I2_" << n << "_se,I2_" << n << "_quad,I2_" << n << "_quad_plane";
    }
    out << '\n';
    using io::format_double;
    for (const auto& r : t.rows) {
        out << format_double(r.exclusion_radius) << ',' << format_double(r.singles_mc_mean) << ','
            << format_double(r.singles_mc_std_error) << ',' << format_double(r.singles_quadrature) << ','
            << format_double(r.singles_quadrature_plane) << ',' << format_double(r.singles_closed_form);
        for (const auto& c : r.pairs)
            out << ',' << format_double(c.mc_mean) << ',' << format_double(c.mc_std_error) << ','
                << format_double(c.quadrature) << ',' << format_double(c.quadrature_plane);
        out << '\n';
    }
}

void write_samples_csv(const ExperimentConfig& config, const InterferenceSamples& s) {
    auto out = open_csv(config, "interference_samples.csv");
    out << "rep,i1,i2,total\n";
    for (std::size_t i = 0; i < s.samples.size(); ++i)
        out << i << ',' << io::format_double(s.samples[i].i1) << ',' << io::format_double(s.samples[i].i2)
            << ',' << io::format_double(s.samples[i].total) << '\n';
}

ordered_json interference_summary(const std::vector<InterferenceTable>& tables) {
    ordered_json j = ordered_json::array();
    for (const auto& t : tables) {
        double worst_singles = 0.0, worst_pairs = 0.0;
        for (const auto& r : t.rows) {
            if (r.singles_quadrature > 0.0)
                worst_singles = std::max(worst_singles,
                                         std::fabs(r.singles_mc_mean - r.singles_quadrature) / r.singles_quadrature);
            for (const auto& c : r.pairs)
                if (c.quadrature > 0.0)
                    worst_pairs = std::max(worst_pairs, std::fabs(c.mc_mean - c.quadrature) / c.quadrature);
        }
        j.push_back({{"beta", t.beta},
                     {"observation_radius", t.observation_radius},
                     {"replications", t.replications},
                     {"max_rel_diff_singles", worst_singles},
                     {"max_rel_diff_pairs", worst_pairs}});
    }
    return j;
}

}  // namespace

void cmd_interference(const ExperimentConfig& config) {
    config.validate();
    write_config_record(config);
    InterferenceSamples samples;
    const double betas[] = {config.beta};
    const auto tables = interference_study(config, betas, config.emits("samples") ? &samples : nullptr);
    if (config.emits("csv")) write_interference_csv(config, "interference.csv", tables.front());
    if (config.emits("samples")) write_samples_csv(config, samples);
    if (config.emits("json")) write_json(config, "interference_summary.json", {{"tables", interference_summary(tables)}});
}

namespace {

void write_laplace_outputs(const ExperimentConfig& config, const LaplaceComparison& c) {
    if (config.emits("csv")) {
        auto s = open_csv(config, "laplace_singles.csv");
        io::write_laplace_csv(s, c.singles.points);
        auto p = open_csv(config, "laplace_pairs.csv");
        io::write_laplace_csv(p, c.pairs.points);
        auto cmp = open_csv(config, "laplace_compare.csv");
        cmp << "s,singles_series,singles_series_se,singles_empirical,singles_empirical_se,"
               "pairs_series,pairs_series_se,pairs_empirical,pairs_empirical_se\n";
        using io::format_double;
        for (std::size_t k = 0; k < c.singles.points.size(); ++k)
            cmp << format_double(c.singles.points[k].s) << ',' << format_double(c.singles.points[k].value)
                << ',' << format_double(c.singles.points[k].std_error) << ','
                << format_double(c.empirical_singles[k].value) << ','
                << format_double(c.empirical_singles[k].std_error) << ','
                << format_double(c.pairs.points[k].value) << ',' << format_double(c.pairs.points[k].std_error)
                << ',' << format_double(c.empirical_pairs[k].value) << ','
                << format_double(c.empirical_pairs[k].std_error) << '\n';
    }
    if (config.emits("json")) {
        double worst = 0.0;
        for (std::size_t k = 0; k < c.singles.points.size(); ++k) {
            worst = std::max(worst, std::fabs(c.singles.points[k].value - c.empirical_singles[k].value) /
                                        c.empirical_singles[k].value);
            worst = std::max(worst, std::fabs(c.pairs.points[k].value - c.empirical_pairs[k].value) /
                                        c.empirical_pairs[k].value);
        }
        write_json(config, "laplace_diagnostics.json",
                   {{"window", {{"x", c.window.min_corner().x}, {"y", c.window.min_corner().y},
                                {"width", c.window.width()}, {"height", c.window.height()}}},
                    {"mean_count", c.singles.mean_count},
                    {"n_max", c.singles.n_max},
                    {"tail_bound", c.singles.tail_bound},
                    {"epsilon", config.lt_epsilon},
                    {"mc_samples_per_term", config.lt_samples},
                    {"empirical_replications", c.empirical_replications},
                    {"max_rel_diff", worst}});
    }
}

}  // namespace

void cmd_laplace(const ExperimentConfig& config) {
    const LaplaceComparison c = laplace_study(config);
    write_config_record(config);
    write_laplace_outputs(config, c);
}

// ---- figures ---------------------------------------------------------------

std::vector<std::string> figure_ids() {
    return {"fig1", "fig3", "fig4a", "fig4b", "fig4c", "fig4d", "fig4e", "fig4f", "fig6", "fig7"};
}

ExperimentConfig figure_config(std::string_view id) {
    ExperimentConfig c;
    c.out = "out/" + std::string(id);
    if (id == "fig1" || id == "fig3") {
        c.lambda = 1.0;
        c.window_width = c.window_height = 10.0;
        c.margin = 0.0;
        c.replications = 1;
        c.probes = 40000;
    } else if (id.size() == 5 && id.substr(0, 4) == "fig4" && id[4] >= 'a' && id[4] <= 'f') {
        c.lambda = 1.0;
        c.window_width = c.window_height = 50.0;
        c.replications = 200;
        c.radii_count = 64;
    } else if (id == "fig6" || id == "fig7") {
        c.lambda = 0.1;
        c.window_width = c.window_height = 100.0;
        c.replications = 20000;
        c.fading = FadingMode::none;
        c.r_grid.clear();
        for (int i = 0; i <= 18; ++i) c.r_grid.push_back(0.5 + 0.25 * i);
        c.schemes = id == "fig6" ? std::vector{CooperationScheme::nc()}
                                 : std::vector{CooperationScheme::nc(), CooperationScheme::of1()};
    } else {
        std::string valid;
        for (const auto& v : figure_ids()) valid += (valid.empty() ? "" : ", ") + v;
        throw ConfigError("unknown figure id '" + std::string(id) + "'; valid ids: " + valid);
    }
    return c;
}

namespace {

void reproduce_graph(const ExperimentConfig& config, bool raster) {
    const ReplicationPlan plan = config.plan();
    const Realization real = realize(plan, 0);
    const auto& pat = real.pattern;
    {
        auto out = open_csv(config, "pattern.csv");
        io::write_pattern_csv(out, pat);
        auto g = open_csv(config, "grouping.csv");
        io::write_grouping_csv(g, real.grouping, pat.size());
    }
    if (!raster) {
        auto out = open_csv(config, "nn_graph.csv");
        out << "index,nn_index,distance,mutual\n";
        if (pat.size() >= 2) {
            const auto nn = build_nn_map(pat, plan.policy);
            for (std::size_t i = 0; i < pat.size(); ++i)
                out << i << ',' << nn.nn_index[i] << ',' << io::format_double(nn.nn_distance[i]) << ','
                    << (nn.nn_index[nn.nn_index[i]] == i ? 1 : 0) << '\n';
        }
        return;
    }
    // Association raster: every probe takes the class of its nearest atom.
    const auto roles = atom_roles(real.grouping, pat.size());
    const CellGrid grid(pat.points(), pat.window(), plan.policy);
    const auto side = static_cast<std::size_t>(std::sqrt(static_cast<double>(config.probes)));
    const Window& w = pat.window();
    auto out = open_csv(config, "association.csv");
    out << "x,y,nearest,class\n";
    if (pat.empty()) return;
    for (std::size_t iy = 0; iy < side; ++iy)
        for (std::size_t ix = 0; ix < side; ++ix) {
            const Point2D q{w.min_corner().x + (ix + 0.5) * w.width() / side,
                            w.min_corner().y + (iy + 0.5) * w.height() / side};
            const auto hit = grid.nearest(q);
            out << io::format_double(q.x) << ',' << io::format_double(q.y) << ',' << hit.index << ','
                << static_cast<char>(roles[hit.index].group) << '\n';
        }
}

void reproduce_fig4(const ExperimentConfig& config, char panel) {
    const bool singles = panel <= 'c';
    const double lam_i = (singles ? 1.0 - p_star() : p_star()) * config.lambda;
    const ReplicationPlan plan = config.plan();
    const auto radii = config.radii();
    const CurveSet proc = curves_for(plan, singles ? ProcessSelector::singles() : ProcessSelector::pairs(),
                                     radii, config.probes);
    const int kind = (panel - 'a') % 3;  // 0 = G, 1 = F, 2 = J
    std::vector<double> analytic;
    for (double r : radii) analytic.push_back(kind == 2 ? 1.0 : nn_cdf_reference(r, lam_i));
    const EmpiricalCurve& curve = kind == 0 ? proc.g : kind == 1 ? proc.f : proc.j;
    std::vector<std::pair<std::string, std::vector<double>>> extra;
    if (kind != 2) {
        const CurveSet ref = curves_for(plan, ProcessSelector::reference(lam_i), radii, config.probes);
        const EmpiricalCurve& rc = kind == 0 ? ref.g : ref.f;
        extra.emplace_back("reference", rc.values);
        extra.emplace_back("reference_se", rc.std_error);
    }
    if (kind == 2) analytic.assign(curve.radii.size(), 1.0);
    extra.emplace_back("reference_analytic", analytic);
    if (!singles && kind == 0) {
        std::vector<double> law;
        for (double r : radii) law.push_back(nn_cdf_pairs(r, config.lambda));
        extra.emplace_back("analytic", law);
    }
    auto out = open_csv(config, "fig4" + std::string(1, panel) + ".csv");
    io::write_curve_csv(out, curve, extra);
}

void reproduce_interference(const ExperimentConfig& config, bool pairs) {
    const std::vector<double> betas{2.5, 4.0};
    const auto tables = interference_study(config, betas);
    auto out = open_csv(config, pairs ? "fig7.csv" : "fig6.csv");
    out << "R";
    for (const auto& t : tables) {
        const std::string b = "b" + io::format_double(t.beta);
        if (!pairs) {
            out << ",I1_" << b << "_mc,I1_" << b << "_se,I1_" << b << "_quad";
        } else {
            for (const auto& c : t.rows.front().pairs) {
                const std::string n = column_name(c.scheme) + "_" + b;
                out << ",I2_" << n << "_mc,I2_" << n << "_se,I2_" << n << "_quad";
            }
        }
    }
    out << '\n';
    using io::format_double;
    for (std::size_t r = 0; r < config.r_grid.size(); ++r) {
        out << format_double(config.r_grid[r]);
        for (const auto& t : tables) {
            const auto& row = t.rows[r];
            if (!pairs)
                out << ',' << format_double(row.singles_mc_mean) << ',' << format_double(row.singles_mc_std_error)
                    << ',' << format_double(row.singles_quadrature);
            else
                for (const auto& c : row.pairs)
                    out << ',' << format_double(c.mc_mean) << ',' << format_double(c.mc_std_error) << ','
                        << format_double(c.quadrature);
        }
        out << '\n';
    }
    write_json(config, pairs ? "fig7_summary.json" : "fig6_summary.json", {{"tables", interference_summary(tables)}});
}

}  // namespace

void cmd_reproduce(std::string_view id, const ExperimentConfig& config) {
    figure_config(id);  // rejects unknown ids
    config.validate();
    write_config_record(config);
    if (id == "fig1") reproduce_graph(config, false);
    else if (id == "fig3") reproduce_graph(config, true);
    else if (id.substr(0, 4) == "fig4") reproduce_fig4(config, id[4]);
    else if (id == "fig6") reproduce_interference(config, false);
    else reproduce_interference(config, true);
}

}  // namespace mnnr
