#include "mnnr/statistics.hpp"

#include "mnnr/parallel.hpp"
#include "mnnr/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mnnr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_and_se(const std::vector<double>& xs) {
    MeanSe out;
    if (xs.empty()) return out;
    const double n = static_cast<double>(xs.size());
    out.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    if (xs.size() < 2) return out;
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.se = std::sqrt(ss / (n - 1.0) / n);
    return out;
}

void check_radii(std::span<const double> radii) {
    if (radii.empty()) throw std::domain_error("radius grid is empty");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] >= 0.0)) throw std::domain_error("radius grid must be non-negative");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw std::domain_error("radius grid must be strictly increasing");
    }
}

// Per-replication cdf counts on a grid: counts[j] = #{d <= radii[j]}.
struct CurveTally {
    std::vector<double> counts;
    double n = 0.0;
    bool skipped = false;
};

CurveTally tally(std::vector<double> distances, std::span<const double> radii) {
    CurveTally t;
    std::sort(distances.begin(), distances.end());
    t.n = static_cast<double>(distances.size());
    t.counts.resize(radii.size());
    for (std::size_t j = 0; j < radii.size(); ++j)
        t.counts[j] = static_cast<double>(
            std::upper_bound(distances.begin(), distances.end(), radii[j]) - distances.begin());
    return t;
}

EmpiricalCurve pool_curve(const std::vector<CurveTally>& tallies, std::span<const double> radii) {
    EmpiricalCurve curve;
    curve.radii.assign(radii.begin(), radii.end());
    std::vector<double> den;
    for (const auto& t : tallies) {
        if (t.skipped) {
            ++curve.skipped_replications;
            continue;
        }
        den.push_back(t.n);
    }
    curve.n_samples = static_cast<std::size_t>(std::accumulate(den.begin(), den.end(), 0.0));
    for (std::size_t j = 0; j < radii.size(); ++j) {
        std::vector<double> num;
        num.reserve(den.size());
        for (const auto& t : tallies)
            if (!t.skipped) num.push_back(t.counts[j]);
        const auto p = pooled_ratio(num, den);
        curve.values.push_back(p.value);
        curve.std_error.push_back(p.std_error);
    }
    return curve;
}

double nearest_distance(const CellGrid& grid, Point2D p, std::size_t exclude) {
    const auto hit = grid.nearest(p, exclude);
    return hit.index == CellGrid::npos ? kInf : std::sqrt(hit.squared_distance);
}

// Cdf table of Poisson(mean) on 0..kmax.
std::vector<double> poisson_cdf_table(double mean, std::uint64_t kmax) {
    std::vector<double> cdf(kmax + 1);
    const double log_mean = mean > 0.0 ? std::log(mean) : -kInf;
    double acc = 0.0;
    for (std::uint64_t k = 0; k <= kmax; ++k) {
        const double kk = static_cast<double>(k);
        const double log_pmf = mean > 0.0 ? -mean + kk * log_mean - std::lgamma(kk + 1.0)
                                          : (k == 0 ? 0.0 : -kInf);
        acc += std::exp(log_pmf);
        cdf[k] = std::min(acc, 1.0);
    }
    return cdf;
}

// sup_x |F_n(x) - F(x)| for integer data; both cdfs are right-continuous
// steps at the integers, so the integers min-1..max suffice.
double ks_statistic(std::vector<std::uint64_t> sample, double mean) {
    std::sort(sample.begin(), sample.end());
    const std::uint64_t lo = sample.front();
    const std::uint64_t hi = sample.back();
    const auto cdf = poisson_cdf_table(mean, hi);
    const double n = static_cast<double>(sample.size());
    double d = lo > 0 ? cdf[lo - 1] : 0.0;
    auto it = sample.begin();
    for (std::uint64_t k = lo; k <= hi; ++k) {
        while (it != sample.end() && *it <= k) ++it;
        const double ecdf = static_cast<double>(it - sample.begin()) / n;
        d = std::max(d, std::fabs(ecdf - cdf[k]));
    }
    return d;
}

double sample_mean(const std::vector<std::uint64_t>& xs) {
    double s = 0.0;
    for (auto x : xs) s += static_cast<double>(x);
    return s / static_cast<double>(xs.size());
}

}  // namespace

void validate_plan(const ReplicationPlan& plan) {
    if (plan.n_replications < 1) throw std::domain_error("plan needs at least one replication");
    if (!(plan.lambda > 0.0) || !std::isfinite(plan.lambda))
        throw std::domain_error("plan lambda must be finite and > 0");
    validate_policy(plan.policy, plan.window);
}

Realization realize(const ReplicationPlan& plan, std::size_t replication) {
    Realization r;
    r.pattern = sample_ppp(plan.lambda, plan.window,
                           plan.seed.with_stream(replication).with_tag(stream_tag::pattern));
    r.grouping = classify(r.pattern, plan.policy, 2);
    return r;
}

Proportion pooled_ratio(std::span<const double> numerators, std::span<const double> denominators) {
    if (numerators.size() != denominators.size())
        throw std::domain_error("pooled_ratio: size mismatch");
    Proportion p;
    const double total = std::accumulate(denominators.begin(), denominators.end(), 0.0);
    if (!(total > 0.0)) return p;
    p.value = std::accumulate(numerators.begin(), numerators.end(), 0.0) / total;
    const std::size_t reps = numerators.size();
    if (reps < 2) {
        p.std_error = std::sqrt(std::max(p.value * (1.0 - p.value), 0.0) / total);
        return p;
    }
    double ss = 0.0;
    for (std::size_t i = 0; i < reps; ++i) {
        const double e = numerators[i] - p.value * denominators[i];
        ss += e * e;
    }
    const double r = static_cast<double>(reps);
    p.std_error = std::sqrt(r / (r - 1.0) * ss) / total;
    return p;
}

ClassFractions estimate_class_fractions(const ReplicationPlan& plan) {
    validate_plan(plan);
    const Window inner = interior(plan.window, plan.policy);
    std::vector<double> singles(plan.n_replications), paired(plan.n_replications),
        total(plan.n_replications);

    parallel_for(plan.n_replications, plan.threads, [&](std::size_t r) {
        const auto real = realize(plan, r);
        std::size_t s = 0, p = 0;
        for (std::size_t i : real.grouping.singles) s += inner.contains(real.pattern[i]);
        for (const auto& [a, b] : real.grouping.pairs)
            p += inner.contains(real.pattern[a]) + inner.contains(real.pattern[b]);
        singles[r] = static_cast<double>(s);
        paired[r] = static_cast<double>(p);
        total[r] = static_cast<double>(s + p);
    });

    ClassFractions out;
    out.single = pooled_ratio(singles, total);
    out.paired = pooled_ratio(paired, total);
    out.n_atoms = static_cast<std::size_t>(std::accumulate(total.begin(), total.end(), 0.0));
    out.n_replications = plan.n_replications;

    auto per_area = [&](std::vector<double> xs) {
        for (double& x : xs) x /= inner.area();
        const auto m = mean_and_se(xs);
        return Proportion{m.mean, m.se};
    };
    out.single_intensity = per_area(singles);
    out.paired_intensity = per_area(paired);
    return out;
}

VoronoiShares estimate_voronoi_shares(const ReplicationPlan& plan, std::size_t n_probes) {
    validate_plan(plan);
    if (n_probes < 1) throw std::domain_error("estimate_voronoi_shares: need at least one probe");
    const Window inner = interior(plan.window, plan.policy);
    std::vector<double> singles(plan.n_replications), pairs(plan.n_replications),
        probes(plan.n_replications);

    parallel_for(plan.n_replications, plan.threads, [&](std::size_t r) {
        const auto real = realize(plan, r);
        if (real.pattern.empty()) return;
        const auto roles = atom_roles(real.grouping, real.pattern.size());
        const CellGrid grid(real.pattern.points(), plan.window, plan.policy);
        Rng rng(plan.seed.with_stream(r).with_tag(stream_tag::probes));
        const Point2D lo = inner.min_corner();
        std::size_t s = 0;
        for (std::size_t k = 0; k < n_probes; ++k) {
            const Point2D z{lo.x + inner.width() * rng.uniform(), lo.y + inner.height() * rng.uniform()};
            const auto hit = grid.nearest(z);
            s += roles[hit.index].group == GroupClass::single;
        }
        singles[r] = static_cast<double>(s);
        pairs[r] = static_cast<double>(n_probes - s);
        probes[r] = static_cast<double>(n_probes);
    });

    VoronoiShares out;
    out.singles = pooled_ratio(singles, probes);
    out.pairs.value = 1.0 - out.singles.value;
    out.pairs.std_error = out.singles.std_error;
    out.n_probes = static_cast<std::size_t>(std::accumulate(probes.begin(), probes.end(), 0.0));
    return out;
}

PointPattern select_process(const ReplicationPlan& plan, std::size_t replication,
                            const Realization& realization, ProcessSelector which) {
    switch (which.kind) {
        case ProcessSelector::Kind::singles:
            return subpattern(realization.pattern, realization.grouping, Subprocess::singles);
        case ProcessSelector::Kind::pairs:
            return subpattern(realization.pattern, realization.grouping, Subprocess::pairs);
        case ProcessSelector::Kind::reference: {
            const double keep = which.reference_lambda / plan.lambda;
            return independent_thin(
                realization.pattern, keep,
                plan.seed.with_stream(replication).with_tag(stream_tag::reference));
        }
        case ProcessSelector::Kind::all:
            break;
    }
    return realization.pattern;
}

std::vector<double> radius_grid(double r_max, std::size_t count) {
    if (count < 2 || !(r_max > 0.0)) throw std::domain_error("radius_grid: need count >= 2, r_max > 0");
    std::vector<double> radii(count);
    for (std::size_t i = 0; i < count; ++i)
        radii[i] = r_max * static_cast<double>(i) / static_cast<double>(count - 1);
    return radii;
}

std::vector<double> default_radius_grid(double lambda) {
    return radius_grid(2.0 / std::sqrt(lambda), 64);
}

EmpiricalCurve estimate_nn_function(const ReplicationPlan& plan, ProcessSelector which,
                                    std::span<const double> radii) {
    validate_plan(plan);
    check_radii(radii);
    const Window inner = interior(plan.window, plan.policy);
    std::vector<CurveTally> tallies(plan.n_replications);

    parallel_for(plan.n_replications, plan.threads, [&](std::size_t r) {
        const auto real = realize(plan, r);
        const auto proc = select_process(plan, r, real, which);
        if (proc.empty()) {
            tallies[r].skipped = true;
            return;
        }
        const CellGrid grid(proc.points(), plan.window, plan.policy);
        std::vector<double> d;
        for (std::size_t i = 0; i < proc.size(); ++i)
            if (inner.contains(proc[i])) d.push_back(nearest_distance(grid, proc[i], i));
        tallies[r] = tally(std::move(d), radii);
    });
    return pool_curve(tallies, radii);
}

EmpiricalCurve estimate_empty_space(const ReplicationPlan& plan, ProcessSelector which,
                                    std::span<const double> radii, std::size_t n_probes) {
    validate_plan(plan);
    check_radii(radii);
    if (n_probes < 1) throw std::domain_error("estimate_empty_space: need at least one probe");
    const Window inner = interior(plan.window, plan.policy);
    std::vector<CurveTally> tallies(plan.n_replications);

    parallel_for(plan.n_replications, plan.threads, [&](std::size_t r) {
        const auto real = realize(plan, r);
        const auto proc = select_process(plan, r, real, which);
        if (proc.empty()) {
            tallies[r].skipped = true;
            return;
        }
        const CellGrid grid(proc.points(), plan.window, plan.policy);
        Rng rng(plan.seed.with_stream(r).with_tag(stream_tag::probes));
        const Point2D lo = inner.min_corner();
        std::vector<double> d(n_probes);
        for (std::size_t k = 0; k < n_probes; ++k) {
            const Point2D z{lo.x + inner.width() * rng.uniform(), lo.y + inner.height() * rng.uniform()};
            d[k] = nearest_distance(grid, z, CellGrid::npos);
        }
        tallies[r] = tally(std::move(d), radii);
    });
    return pool_curve(tallies, radii);
}

EmpiricalCurve j_function(const EmpiricalCurve& g, const EmpiricalCurve& f, double floor) {
    if (g.radii != f.radii) throw std::domain_error("j_function: G and F use different radius grids");
    EmpiricalCurve j;
    j.n_samples = std::min(g.n_samples, f.n_samples);
    j.skipped_replications = std::max(g.skipped_replications, f.skipped_replications);
    for (std::size_t k = 0; k < g.radii.size(); ++k) {
        const double sg = 1.0 - g.values[k];
        const double sf = 1.0 - f.values[k];
        if (sf < floor) continue;
        const double value = sg / sf;
        const double rel_g = sg > 0.0 ? g.std_error[k] / sg : 0.0;
        const double rel_f = f.std_error[k] / sf;
        j.radii.push_back(g.radii[k]);
        j.values.push_back(value);
        j.std_error.push_back(value > 0.0 ? value * std::hypot(rel_g, rel_f)
                                          : g.std_error[k] / sf);
    }
    return j;
}

double poisson_cdf(std::uint64_t k, double mean) { return poisson_cdf_table(mean, k)[k]; }

KsResult ks_poisson_test(std::span<const std::uint64_t> counts, const SeedSpec& seed,
                         std::size_t n_bootstrap, unsigned threads) {
    if (counts.empty()) throw std::domain_error("ks_poisson_test: no data");
    std::vector<std::uint64_t> sample(counts.begin(), counts.end());
    const double mean = sample_mean(sample);

    KsResult out;
    out.n = sample.size();
    out.statistic = ks_statistic(sample, mean);

    std::vector<double> boot(n_bootstrap);
    parallel_for(n_bootstrap, threads, [&](std::size_t b) {
        Rng rng(seed.with_stream(b).with_tag(stream_tag::bootstrap));
        std::vector<std::uint64_t> xs(sample.size());
        for (auto& x : xs) x = rng.poisson(mean);
        boot[b] = ks_statistic(xs, sample_mean(xs));
    });
    const auto exceed = std::count_if(boot.begin(), boot.end(),
                                      [&](double d) { return d >= out.statistic; });
    out.p_value = (1.0 + static_cast<double>(exceed)) / (1.0 + static_cast<double>(n_bootstrap));
    return out;
}

std::vector<std::uint64_t> interior_counts(const ReplicationPlan& plan, ProcessSelector which) {
    validate_plan(plan);
    const Window inner = interior(plan.window, plan.policy);
    std::vector<std::uint64_t> counts(plan.n_replications);
    parallel_for(plan.n_replications, plan.threads, [&](std::size_t r) {
        const auto real = realize(plan, r);
        const auto proc = select_process(plan, r, real, which);
        std::uint64_t c = 0;
        for (const auto& p : proc.points()) c += inner.contains(p);
        counts[r] = c;
    });
    return counts;
}

KsResult ks_poisson_count_test(const ReplicationPlan& plan, ProcessSelector which,
                               std::size_t n_bootstrap) {
    if (plan.n_replications < 100)
        throw std::domain_error("ks_poisson_count_test: needs at least 100 replications");
    const auto counts = interior_counts(plan, which);
    return ks_poisson_test(counts, plan.seed, n_bootstrap, plan.threads);
}

}  // namespace mnnr
