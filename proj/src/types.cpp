#include "mmkmeans/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mmkmeans/errors.hpp"

namespace mmkmeans {

Dataset::Dataset(Matrix points, std::optional<std::vector<std::size_t>> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
    if (points_.rows() == 0 || points_.cols() == 0) {
        throw DimensionError("dataset needs at least one sample and one feature");
    }
    for (double v : points_.values()) {
        if (!std::isfinite(v)) throw DataError("dataset contains a non-finite value");
    }
    if (labels_) {
        if (labels_->size() != points_.rows()) {
            throw DimensionError("label vector has " + std::to_string(labels_->size()) + " entries for " +
                                 std::to_string(points_.rows()) + " samples");
        }
        num_classes_ = *std::max_element(labels_->begin(), labels_->end()) + 1;
    }
}

const std::vector<std::size_t>& Dataset::labels() const {
    if (!labels_) throw DataError("dataset has no labels");
    return *labels_;
}

ObservationMask::ObservationMask(std::size_t rows, std::size_t cols, bool observed)
    : rows_(rows), cols_(cols), flags_(rows * cols, observed ? 1 : 0) {}

std::size_t ObservationMask::observed_count(std::size_t i) const noexcept {
    const auto first = flags_.begin() + static_cast<std::ptrdiff_t>(i * cols_);
    return static_cast<std::size_t>(std::count(first, first + static_cast<std::ptrdiff_t>(cols_), 1));
}

std::size_t ObservationMask::unobserved_total() const noexcept {
    return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), 0));
}

void check_mask_shape(const Matrix& points, const ObservationMask& mask) {
    if (mask.rows() != points.rows() || mask.cols() != points.cols()) {
        throw DimensionError("mask is " + std::to_string(mask.rows()) + "x" + std::to_string(mask.cols()) +
                             ", data is " + std::to_string(points.rows()) + "x" + std::to_string(points.cols()));
    }
}

ClusterModel::ClusterModel(Matrix centroids) : centroids_(std::move(centroids)) {
    for (double v : centroids_.values()) {
        if (!std::isfinite(v)) throw DataError("centroid contains a non-finite value");
    }
}

void check_assignment(const Assignment& asg, std::size_t rows, std::size_t k) {
    if (asg.size() != rows) {
        throw DimensionError("assignment has " + std::to_string(asg.size()) + " entries for " +
                             std::to_string(rows) + " samples");
    }
    for (std::size_t id : asg.cluster_of) {
        if (id >= k) throw DimensionError("cluster id " + std::to_string(id) + " out of range for k=" + std::to_string(k));
    }
}

void RunConfig::validate(std::size_t sample_count) const {
    if (k == 0) throw ConfigError("k must be at least 1");
    if (k > sample_count) {
        throw ConfigError("k=" + std::to_string(k) + " exceeds the sample count " + std::to_string(sample_count));
    }
    if (!(epsilon >= 0.0)) throw ConfigError("epsilon must be nonnegative");
    if (max_iter == 0) throw ConfigError("max_iter must be at least 1");
}

}  // namespace mmkmeans
