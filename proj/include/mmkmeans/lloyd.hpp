#pragma once

#include <cstddef>

#include "mmkmeans/random.hpp"
#include "mmkmeans/types.hpp"

namespace mmkmeans {

struct LloydResult {
    ClusterModel model;
    Assignment assignment;
    RunTrace trace;
};

/// Picks k distinct rows uniformly at random (partial Fisher-Yates) as centroids.
/// Throws ConfigError when k == 0 or k > m.
ClusterModel init_random_samples(const Dataset& data, std::size_t k, Rng& rng);

/// Nearest-centroid assignment by squared distance; ties go to the lowest cluster id.
Assignment assign_step(const Matrix& points, const ClusterModel& model);
Assignment assign_step(const Dataset& data, const ClusterModel& model);

/// Coordinate-wise mean of each cluster's members. An empty cluster keeps
/// its centroid from `previous`.
ClusterModel centroid_update_step(const Matrix& points, const Assignment& asg, std::size_t k,
                                  const ClusterModel& previous);
ClusterModel centroid_update_step(const Dataset& data, const Assignment& asg, std::size_t k,
                                  const ClusterModel& previous);

/// Standard K-means from random-sample initialization.
///
/// Each iteration n = 1, 2, ... assigns, updates, records the complete-data
/// objective and the centroid movement against iteration n-1, and stops once
/// the movement is <= cfg.epsilon (converged) or n reaches cfg.max_iter.
LloydResult run_lloyd(const Dataset& data, const RunConfig& cfg);

/// Same loop as run_lloyd, starting from the given centroids. Consumes no randomness.
LloydResult run_lloyd_from(const Dataset& data, const ClusterModel& initial, const RunConfig& cfg);

}  // namespace mmkmeans
