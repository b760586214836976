#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>

namespace mmkmeans {

/// Seeded generator with library-independent derived draws.
///
/// The engine is std::mt19937_64, whose output sequence the standard fixes.
/// The distributions built on top of it (std::uniform_real_distribution and
/// friends) are not fixed across standard libraries, so the conversions here
/// are spelled out:
///   - uniform01: top 53 bits of one engine draw, scaled by 2^-53, in [0, 1).
///   - index(n): rejection sampling on the raw 64-bit draw, unbiased.
///   - normal: Box-Muller on two uniform01 draws, caching the second variate.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    double uniform01();
    /// Uniform integer in [0, n). n must be positive.
    std::size_t index(std::size_t n);
    double normal();

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_normal_;
};

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t value) noexcept;

/// Seed for sub-stream `stream` of `base`. Distinct streams give unrelated seeds.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept;

}  // namespace mmkmeans
