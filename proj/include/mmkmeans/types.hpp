#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mmkmeans/matrix.hpp"

namespace mmkmeans {

/// m samples in d dimensions, optionally with ground-truth class ids.
///
/// Construction validates the invariants: m >= 1, d >= 1, every value
/// finite, and a label vector (when present) of length m.
class Dataset {
public:
    explicit Dataset(Matrix points, std::optional<std::vector<std::size_t>> labels = std::nullopt);

    const Matrix& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.rows(); }
    std::size_t dims() const noexcept { return points_.cols(); }
    std::span<const double> row(std::size_t i) const noexcept { return points_.row(i); }

    bool has_labels() const noexcept { return labels_.has_value(); }
    /// Throws DataError when the dataset is unlabeled.
    const std::vector<std::size_t>& labels() const;
    /// Largest label + 1, or 0 when unlabeled.
    std::size_t num_classes() const noexcept { return num_classes_; }

private:
    Matrix points_;
    std::optional<std::vector<std::size_t>> labels_;
    std::size_t num_classes_ = 0;
};

/// Per-element observation flags; true means the coordinate was measured.
class ObservationMask {
public:
    ObservationMask() = default;
    ObservationMask(std::size_t rows, std::size_t cols, bool observed = true);

    static ObservationMask all_observed(std::size_t rows, std::size_t cols) { return {rows, cols, true}; }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    bool observed(std::size_t i, std::size_t j) const noexcept { return flags_[i * cols_ + j] != 0; }
    void set_observed(std::size_t i, std::size_t j, bool value) noexcept {
        flags_[i * cols_ + j] = value ? 1 : 0;
    }

    std::size_t observed_count(std::size_t i) const noexcept;
    bool fully_observed(std::size_t i) const noexcept { return observed_count(i) == cols_; }
    bool any_missing(std::size_t i) const noexcept { return observed_count(i) < cols_; }
    std::size_t unobserved_total() const noexcept;

    bool operator==(const ObservationMask&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> flags_;
};

/// Throws DimensionError unless the mask has the dataset's shape.
void check_mask_shape(const Matrix& points, const ObservationMask& mask);

/// K centroids in d dimensions.
class ClusterModel {
public:
    ClusterModel() = default;
    explicit ClusterModel(Matrix centroids);

    const Matrix& centroids() const noexcept { return centroids_; }
    Matrix& centroids() noexcept { return centroids_; }
    std::size_t k() const noexcept { return centroids_.rows(); }
    std::size_t dims() const noexcept { return centroids_.cols(); }
    std::span<const double> centroid(std::size_t c) const noexcept { return centroids_.row(c); }

    bool operator==(const ClusterModel&) const = default;

private:
    Matrix centroids_;
};

/// Hard partition: cluster_of[i] is the cluster id of sample i.
struct Assignment {
    std::vector<std::size_t> cluster_of;

    std::size_t size() const noexcept { return cluster_of.size(); }
    std::size_t operator[](std::size_t i) const noexcept { return cluster_of[i]; }

    bool operator==(const Assignment&) const = default;
};

/// Throws DimensionError unless asg has one id per row and every id is < k.
void check_assignment(const Assignment& asg, std::size_t rows, std::size_t k);

struct RunConfig {
    std::size_t k = 1;
    double epsilon = 1e-6;
    std::size_t max_iter = 100;
    std::uint64_t seed = 0;

    /// Throws ConfigError for k == 0, k > sample_count, epsilon < 0 or max_iter == 0.
    void validate(std::size_t sample_count) const;
};

struct TraceEntry {
    std::size_t n = 0;
    Matrix centroids;
    double objective = 0.0;
    /// Sum over clusters of the squared centroid displacement since iteration n-1.
    double movement = 0.0;
};

struct RunTrace {
    /// Centroids before the first iteration; the reference for entry n = 1's movement.
    Matrix initial;
    std::vector<TraceEntry> iterations;
    bool converged = false;
    double elapsed_seconds = 0.0;
};

}  // namespace mmkmeans
