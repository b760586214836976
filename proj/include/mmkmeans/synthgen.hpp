#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mmkmeans/random.hpp"
#include "mmkmeans/types.hpp"

namespace mmkmeans {

enum class Family { circles, moons, blobs, varied, aniso };

inline constexpr std::array<Family, 5> kAllFamilies{Family::circles, Family::moons, Family::varied,
                                                    Family::aniso, Family::blobs};

std::string_view to_string(Family family) noexcept;
/// Throws ConfigError for an unknown name.
Family parse_family(std::string_view name);

/// Number of generating components: 2 for circles and moons, 3 otherwise.
std::size_t true_cluster_count(Family family) noexcept;

/// Linear map applied to blob samples for the aniso family, as row vector
/// times matrix: (x, y) -> (0.6x - 0.4y, -0.6x + 0.8y).
inline constexpr std::array<std::array<double, 2>, 2> kAnisoTransform{{{0.6, -0.6}, {-0.4, 0.8}}};

/// Per-component standard deviations of the blob families.
std::array<double, 3> blob_stddevs(Family family) noexcept;

/// Default layout seed: 8 for blobs, 170 for varied and aniso, 0 otherwise.
std::uint32_t default_layout_seed(Family family) noexcept;

/// Three blob centers drawn uniform in [-10, 10]^2 from a 32-bit MT19937
/// seeded with `layout_seed`: row-major, each coordinate from one 53-bit
/// double built from two engine outputs (a >> 5, b >> 6).
Matrix blob_centers(std::uint32_t layout_seed);

struct DatasetSpec {
    Family family = Family::blobs;
    std::size_t n = 500;
    /// Gaussian jitter std-dev for circles and moons. Blob families use blob_stddevs.
    double noise = 0.05;
    std::uint64_t seed = 0;
    std::optional<std::uint32_t> layout_seed;
    /// Rescale each feature to zero mean and unit (population) variance.
    bool standardize = false;

    /// Throws ConfigError for n < true_cluster_count or negative/non-finite noise.
    void validate() const;
};

/// Labeled 2-D points. Components are emitted in label order and sample
/// counts differ by at most one (earlier components get the remainder).
///
///   circles: outer radius 1.0 (label 0), inner radius 0.5 (label 1), evenly
///            spaced angles in [0, 2pi), plus N(0, noise^2) per coordinate.
///   moons:   (cos t, sin t) and (1 - cos t, 0.5 - sin t), t evenly spaced on
///            [0, pi] inclusive, plus noise.
///   blobs:   isotropic Gaussians around blob_centers.
///   varied:  as blobs with std-devs 1.0, 2.5, 0.5.
///   aniso:   blobs mapped through kAnisoTransform.
Dataset generate(const DatasetSpec& spec);

/// Marks exactly round(fraction * m * d) distinct elements unobserved, chosen
/// uniformly over the flattened m*d grid. Throws ConfigError outside [0, 1].
ObservationMask inject_missing(const Dataset& data, double fraction, Rng& rng);

}  // namespace mmkmeans
