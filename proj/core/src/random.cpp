#include "mnnr/random.hpp"

#include <cmath>
#include <stdexcept>

namespace mnnr {

namespace {

std::mt19937_64 make_engine(const SeedSpec& seed) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed.master_seed & 0xffffffffu),
        static_cast<std::uint32_t>(seed.master_seed >> 32),
        static_cast<std::uint32_t>(seed.stream_id & 0xffffffffu),
        static_cast<std::uint32_t>(seed.stream_id >> 32),
        seed.tag,
    };
    return std::mt19937_64(seq);
}

std::uint64_t poisson_inversion(Rng& rng, double mean) {
    const double limit = std::exp(-mean);
    double prod = rng.uniform();
    std::uint64_t k = 0;
    while (prod > limit) {
        prod *= rng.uniform();
        ++k;
    }
    return k;
}

std::uint64_t poisson_ptrs(Rng& rng, double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        const double u = rng.uniform() - 0.5;
        const double v = rng.uniform();
        const double us = 0.5 - std::fabs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            -mean + k * loglam - std::lgamma(k + 1.0))
            return static_cast<std::uint64_t>(k);
    }
}

}  // namespace

Rng::Rng(const SeedSpec& seed) : engine_(make_engine(seed)) {}

double Rng::exponential(double mean) { return -mean * std::log1p(-uniform()); }

std::uint64_t Rng::poisson(double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) throw std::domain_error("poisson: invalid mean");
    if (mean == 0.0) return 0;
    if (mean < 10.0) return poisson_inversion(*this, mean);
    return poisson_ptrs(*this, mean);
}

}  // namespace mnnr
