#pragma once

#include <span>

#include "mmkmeans/types.hpp"

namespace mmkmeans {

/// Sum of squared coordinate differences. Throws DimensionError on length mismatch.
double squared_distance(std::span<const double> a, std::span<const double> b);

// All objectives sum cluster-major: clusters k in order, then samples of C_k
// in index order, then coordinates. Two objectives that visit the same terms
// therefore produce bit-identical sums.

/// Within-cluster sum of squares over every coordinate.
double objective_complete(const Matrix& points, const Assignment& asg, const ClusterModel& model);
double objective_complete(const Dataset& data, const Assignment& asg, const ClusterModel& model);

/// Within-cluster sum of squares restricted to the observed coordinates.
double objective_observed(const Matrix& points, const ObservationMask& mask, const Assignment& asg,
                          const ClusterModel& model);
double objective_observed(const Dataset& data, const ObservationMask& mask, const Assignment& asg,
                          const ClusterModel& model);

/// Surrogate g(model | anchor): the observed objective plus, for every
/// unobserved coordinate (i, j) with i in cluster k, (anchor_kj - model_kj)^2.
/// Equals objective_observed when model == anchor and dominates it otherwise.
double majorizer(const Matrix& points, const ObservationMask& mask, const Assignment& asg,
                 const ClusterModel& model, const ClusterModel& anchor);
double majorizer(const Dataset& data, const ObservationMask& mask, const Assignment& asg,
                 const ClusterModel& model, const ClusterModel& anchor);

/// Sum over clusters of squared centroid displacement between two models.
double centroid_movement(const ClusterModel& current, const ClusterModel& previous);

}  // namespace mmkmeans
