#pragma once

#include <cstdint>
#include <random>

namespace mnnr {

/// Identifies one reproducible random stream.
///
/// The engine of a stream is std::mt19937_64 seeded through std::seed_seq with
/// the 32-bit halves of (master_seed, stream_id) followed by `tag`. Both the
/// engine and seed_seq are fully specified by the standard, so a SeedSpec maps
/// to the same sequence on every conforming toolchain. `tag` separates
/// purposes that share a replication index (sampling, thinning, fading, ...).
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
    std::uint32_t tag = 0;

    SeedSpec with_stream(std::uint64_t id) const { return {master_seed, id, tag}; }
    SeedSpec with_tag(std::uint32_t t) const { return {master_seed, stream_id, t}; }

    friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// Stream tags used across the library.
namespace stream_tag {
inline constexpr std::uint32_t pattern = 0;
inline constexpr std::uint32_t thinning = 1;
inline constexpr std::uint32_t probes = 2;
inline constexpr std::uint32_t fading = 3;
inline constexpr std::uint32_t series = 4;
inline constexpr std::uint32_t bootstrap = 5;
inline constexpr std::uint32_t reference = 6;
}  // namespace stream_tag

/// Random source with portable, hand-written variate generators.
class Rng {
public:
    explicit Rng(const SeedSpec& seed);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Exponential with the given mean, by inversion.
    double exponential(double mean);

    /// Poisson variate. Sequential inversion for mean < 10, otherwise the
    /// PTRS transformed-rejection sampler (Hormann 1993).
    std::uint64_t poisson(double mean);

private:
    std::mt19937_64 engine_;
};

}  // namespace mnnr
