#include "mmkmeans/synthgen.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "mmkmeans/errors.hpp"
#include "sampling.hpp"

namespace mmkmeans {

namespace {

std::vector<std::size_t> component_sizes(std::size_t n, std::size_t parts) {
    std::vector<std::size_t> sizes(parts, n / parts);
    for (std::size_t c = 0; c < n % parts; ++c) ++sizes[c];
    return sizes;
}

// Evenly spaced values on [0, stop]; a single point sits at 0.
double linspace_at(std::size_t t, std::size_t count, double stop) {
    return count <= 1 ? 0.0 : stop * static_cast<double>(t) / static_cast<double>(count - 1);
}

void standardize_columns(Matrix& points) {
    const double m = static_cast<double>(points.rows());
    for (std::size_t j = 0; j < points.cols(); ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < points.rows(); ++i) mean += points(i, j);
        mean /= m;
        double var = 0.0;
        for (std::size_t i = 0; i < points.rows(); ++i) {
            const double diff = points(i, j) - mean;
            var += diff * diff;
        }
        const double sd = std::sqrt(var / m);
        for (std::size_t i = 0; i < points.rows(); ++i) {
            points(i, j) = sd > 0.0 ? (points(i, j) - mean) / sd : points(i, j) - mean;
        }
    }
}

}  // namespace

std::string_view to_string(Family family) noexcept {
    switch (family) {
        case Family::circles: return "circles";
        case Family::moons: return "moons";
        case Family::blobs: return "blobs";
        case Family::varied: return "varied";
        case Family::aniso: return "aniso";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    for (Family f : kAllFamilies) {
        if (to_string(f) == name) return f;
    }
    throw ConfigError("unknown dataset family '" + std::string(name) + "'");
}

std::size_t true_cluster_count(Family family) noexcept {
    return family == Family::circles || family == Family::moons ? 2 : 3;
}

std::array<double, 3> blob_stddevs(Family family) noexcept {
    if (family == Family::varied) return {1.0, 2.5, 0.5};
    return {1.0, 1.0, 1.0};
}

std::uint32_t default_layout_seed(Family family) noexcept {
    switch (family) {
        case Family::blobs: return 8;
        case Family::varied:
        case Family::aniso: return 170;
        default: return 0;
    }
}

Matrix blob_centers(std::uint32_t layout_seed) {
    std::mt19937 engine(layout_seed);
    auto uniform53 = [&engine] {
        const std::uint32_t a = engine() >> 5;
        const std::uint32_t b = engine() >> 6;
        return (a * 67108864.0 + b) / 9007199254740992.0;
    };
    Matrix centers(3, 2);
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t j = 0; j < 2; ++j) centers(c, j) = -10.0 + 20.0 * uniform53();
    }
    return centers;
}

void DatasetSpec::validate() const {
    if (n < true_cluster_count(family)) {
        throw ConfigError("family " + std::string(to_string(family)) + " needs at least " +
                          std::to_string(true_cluster_count(family)) + " samples");
    }
    if (!std::isfinite(noise) || noise < 0.0) throw ConfigError("noise must be a nonnegative finite value");
}

Dataset generate(const DatasetSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const std::size_t parts = true_cluster_count(spec.family);
    const auto sizes = component_sizes(spec.n, parts);

    Matrix points(spec.n, 2);
    std::vector<std::size_t> labels;
    labels.reserve(spec.n);

    std::size_t row = 0;
    auto emit = [&](double x, double y, std::size_t label) {
        points(row, 0) = x;
        points(row, 1) = y;
        labels.push_back(label);
        ++row;
    };

    switch (spec.family) {
        case Family::circles: {
            for (std::size_t c = 0; c < 2; ++c) {
                const double radius = c == 0 ? 1.0 : 0.5;
                for (std::size_t t = 0; t < sizes[c]; ++t) {
                    const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(sizes[c]);
                    const double x = radius * std::cos(angle) + spec.noise * rng.normal();
                    const double y = radius * std::sin(angle) + spec.noise * rng.normal();
                    emit(x, y, c);
                }
            }
            break;
        }
        case Family::moons: {
            for (std::size_t c = 0; c < 2; ++c) {
                for (std::size_t t = 0; t < sizes[c]; ++t) {
                    const double angle = linspace_at(t, sizes[c], std::numbers::pi);
                    double x = std::cos(angle);
                    double y = std::sin(angle);
                    if (c == 1) {
                        x = 1.0 - x;
                        y = 0.5 - y;
                    }
                    x += spec.noise * rng.normal();
                    y += spec.noise * rng.normal();
                    emit(x, y, c);
                }
            }
            break;
        }
        case Family::blobs:
        case Family::varied:
        case Family::aniso: {
            const Matrix centers = blob_centers(spec.layout_seed.value_or(default_layout_seed(spec.family)));
            const auto sd = blob_stddevs(spec.family);
            for (std::size_t c = 0; c < 3; ++c) {
                for (std::size_t t = 0; t < sizes[c]; ++t) {
                    double x = centers(c, 0) + sd[c] * rng.normal();
                    double y = centers(c, 1) + sd[c] * rng.normal();
                    if (spec.family == Family::aniso) {
                        const double tx = x * kAnisoTransform[0][0] + y * kAnisoTransform[1][0];
                        const double ty = x * kAnisoTransform[0][1] + y * kAnisoTransform[1][1];
                        x = tx;
                        y = ty;
                    }
                    emit(x, y, c);
                }
            }
            break;
        }
    }

    if (spec.standardize) standardize_columns(points);
    return Dataset(std::move(points), std::move(labels));
}

ObservationMask inject_missing(const Dataset& data, double fraction, Rng& rng) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) throw ConfigError("missing fraction must lie in [0, 1]");
    const std::size_t m = data.size();
    const std::size_t d = data.dims();
    const auto hidden = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(m * d)));

    std::vector<std::size_t> cells(m * d);
    std::iota(cells.begin(), cells.end(), std::size_t{0});
    ObservationMask mask(m, d, true);
    for (std::size_t cell : detail::sample_without_replacement(std::move(cells), hidden, rng)) {
        mask.set_observed(cell / d, cell % d, false);
    }
    return mask;
}

}  // namespace mmkmeans
