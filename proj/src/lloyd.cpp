#include "mmkmeans/lloyd.hpp"

#include <chrono>
#include <numeric>
#include <string>

#include "mmkmeans/errors.hpp"
#include "mmkmeans/objective.hpp"
#include "sampling.hpp"

namespace mmkmeans {

ClusterModel init_random_samples(const Dataset& data, std::size_t k, Rng& rng) {
    if (k == 0 || k > data.size()) {
        throw ConfigError("cannot pick k=" + std::to_string(k) + " initial centroids from " +
                          std::to_string(data.size()) + " samples");
    }
    std::vector<std::size_t> rows(data.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    const auto picked = detail::sample_without_replacement(std::move(rows), k, rng);

    Matrix centroids(k, data.dims());
    for (std::size_t c = 0; c < k; ++c) {
        const auto src = data.row(picked[c]);
        std::copy(src.begin(), src.end(), centroids.row(c).begin());
    }
    return ClusterModel(std::move(centroids));
}

Assignment assign_step(const Matrix& points, const ClusterModel& model) {
    if (model.dims() != points.cols()) {
        throw DimensionError("model has " + std::to_string(model.dims()) + " dimensions, data has " +
                             std::to_string(points.cols()));
    }
    if (model.k() == 0) throw ConfigError("model has no centroids");
    Assignment asg;
    asg.cluster_of.resize(points.rows());
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const auto x = points.row(i);
        std::size_t best = 0;
        double best_dist = squared_distance(x, model.centroid(0));
        for (std::size_t k = 1; k < model.k(); ++k) {
            const double dist = squared_distance(x, model.centroid(k));
            if (dist < best_dist) {
                best = k;
                best_dist = dist;
            }
        }
        asg.cluster_of[i] = best;
    }
    return asg;
}

Assignment assign_step(const Dataset& data, const ClusterModel& model) {
    return assign_step(data.points(), model);
}

ClusterModel centroid_update_step(const Matrix& points, const Assignment& asg, std::size_t k,
                                  const ClusterModel& previous) {
    if (previous.k() != k || previous.dims() != points.cols()) {
        throw DimensionError("previous model shape does not match k and data dimensions");
    }
    check_assignment(asg, points.rows(), k);

    Matrix sums(k, points.cols());
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const auto x = points.row(i);
        auto acc = sums.row(asg[i]);
        for (std::size_t j = 0; j < x.size(); ++j) acc[j] += x[j];
        ++sizes[asg[i]];
    }
    Matrix centroids = previous.centroids();
    for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] == 0) continue;
        const double count = static_cast<double>(sizes[c]);
        for (std::size_t j = 0; j < points.cols(); ++j) centroids(c, j) = sums(c, j) / count;
    }
    return ClusterModel(std::move(centroids));
}

ClusterModel centroid_update_step(const Dataset& data, const Assignment& asg, std::size_t k,
                                  const ClusterModel& previous) {
    return centroid_update_step(data.points(), asg, k, previous);
}

LloydResult run_lloyd(const Dataset& data, const RunConfig& cfg) {
    cfg.validate(data.size());
    const auto start = std::chrono::steady_clock::now();
    Rng rng(cfg.seed);
    auto initial = init_random_samples(data, cfg.k, rng);
    auto result = run_lloyd_from(data, initial, cfg);
    result.trace.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

LloydResult run_lloyd_from(const Dataset& data, const ClusterModel& initial, const RunConfig& cfg) {
    cfg.validate(data.size());
    if (initial.k() != cfg.k || initial.dims() != data.dims()) {
        throw DimensionError("initial model shape does not match k and data dimensions");
    }
    const auto start = std::chrono::steady_clock::now();

    LloydResult result;
    result.model = initial;
    result.trace.initial = initial.centroids();
    for (std::size_t n = 1; n <= cfg.max_iter; ++n) {
        result.assignment = assign_step(data, result.model);
        auto next = centroid_update_step(data, result.assignment, cfg.k, result.model);
        const double movement = centroid_movement(next, result.model);
        result.model = std::move(next);
        const double objective = objective_complete(data, result.assignment, result.model);
        result.trace.iterations.push_back({n, result.model.centroids(), objective, movement});
        if (movement <= cfg.epsilon) {
            result.trace.converged = true;
            break;
        }
    }
    result.trace.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace mmkmeans
