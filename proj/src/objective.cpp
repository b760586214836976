#include "mmkmeans/objective.hpp"

#include <string>

#include "mmkmeans/errors.hpp"

namespace mmkmeans {

namespace {

void check_model(const Matrix& points, const Assignment& asg, const ClusterModel& model) {
    if (model.dims() != points.cols()) {
        throw DimensionError("model has " + std::to_string(model.dims()) + " dimensions, data has " +
                             std::to_string(points.cols()));
    }
    check_assignment(asg, points.rows(), model.k());
}

}  // namespace

double squared_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DimensionError("vectors of length " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        sum += diff * diff;
    }
    return sum;
}

double objective_complete(const Matrix& points, const Assignment& asg, const ClusterModel& model) {
    check_model(points, asg, model);
    double sum = 0.0;
    for (std::size_t k = 0; k < model.k(); ++k) {
        const auto mu = model.centroid(k);
        for (std::size_t i = 0; i < points.rows(); ++i) {
            if (asg[i] != k) continue;
            const auto x = points.row(i);
            for (std::size_t j = 0; j < x.size(); ++j) {
                const double diff = x[j] - mu[j];
                sum += diff * diff;
            }
        }
    }
    return sum;
}

double objective_complete(const Dataset& data, const Assignment& asg, const ClusterModel& model) {
    return objective_complete(data.points(), asg, model);
}

double objective_observed(const Matrix& points, const ObservationMask& mask, const Assignment& asg,
                          const ClusterModel& model) {
    check_mask_shape(points, mask);
    check_model(points, asg, model);
    double sum = 0.0;
    for (std::size_t k = 0; k < model.k(); ++k) {
        const auto mu = model.centroid(k);
        for (std::size_t i = 0; i < points.rows(); ++i) {
            if (asg[i] != k) continue;
            const auto x = points.row(i);
            for (std::size_t j = 0; j < x.size(); ++j) {
                if (!mask.observed(i, j)) continue;
                const double diff = x[j] - mu[j];
                sum += diff * diff;
            }
        }
    }
    return sum;
}

double objective_observed(const Dataset& data, const ObservationMask& mask, const Assignment& asg,
                          const ClusterModel& model) {
    return objective_observed(data.points(), mask, asg, model);
}

double majorizer(const Matrix& points, const ObservationMask& mask, const Assignment& asg,
                 const ClusterModel& model, const ClusterModel& anchor) {
    check_mask_shape(points, mask);
    check_model(points, asg, model);
    if (anchor.k() != model.k() || anchor.dims() != model.dims()) {
        throw DimensionError("anchor model shape differs from model shape");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < model.k(); ++k) {
        const auto mu = model.centroid(k);
        const auto mu_anchor = anchor.centroid(k);
        for (std::size_t i = 0; i < points.rows(); ++i) {
            if (asg[i] != k) continue;
            const auto x = points.row(i);
            for (std::size_t j = 0; j < x.size(); ++j) {
                // At model == anchor the penalty term is exactly +0.0.
                const double diff = mask.observed(i, j) ? x[j] - mu[j] : mu_anchor[j] - mu[j];
                sum += diff * diff;
            }
        }
    }
    return sum;
}

double majorizer(const Dataset& data, const ObservationMask& mask, const Assignment& asg,
                 const ClusterModel& model, const ClusterModel& anchor) {
    return majorizer(data.points(), mask, asg, model, anchor);
}

double centroid_movement(const ClusterModel& current, const ClusterModel& previous) {
    if (current.k() != previous.k() || current.dims() != previous.dims()) {
        throw DimensionError("centroid sets differ in shape");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < current.k(); ++k) {
        sum += squared_distance(current.centroid(k), previous.centroid(k));
    }
    return sum;
}

}  // namespace mmkmeans
