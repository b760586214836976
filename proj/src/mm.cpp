#include "mmkmeans/mm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "mmkmeans/errors.hpp"
#include "mmkmeans/objective.hpp"
#include "sampling.hpp"

namespace mmkmeans {

CompletedDataset::CompletedDataset(const Dataset& source, ObservationMask mask)
    : source_(&source), mask_(std::move(mask)), working_(source.points()) {
    check_mask_shape(working_, mask_);
    for (std::size_t i = 0; i < working_.rows(); ++i) {
        for (std::size_t j = 0; j < working_.cols(); ++j) {
            if (!mask_.observed(i, j)) working_(i, j) = 0.0;
        }
    }
}

void CompletedDataset::set_unobserved(std::size_t i, std::size_t j, double value) {
    if (mask_.observed(i, j)) {
        throw DataError("slot (" + std::to_string(i) + ", " + std::to_string(j) + ") is observed");
    }
    if (!std::isfinite(value)) throw DataError("imputed value is not finite");
    working_(i, j) = value;
}

ClusterModel init_fully_observed(const Dataset& data, const ObservationMask& mask, std::size_t k, Rng& rng) {
    check_mask_shape(data.points(), mask);
    if (k == 0 || k > data.size()) {
        throw ConfigError("cannot pick k=" + std::to_string(k) + " initial centroids from " +
                          std::to_string(data.size()) + " samples");
    }
    const std::size_t m = data.size();
    const std::size_t d = data.dims();

    std::vector<std::size_t> full_rows;
    for (std::size_t i = 0; i < m; ++i) {
        if (mask.fully_observed(i)) full_rows.push_back(i);
    }

    Matrix centroids(k, d);
    if (full_rows.size() >= k) {
        const auto picked = detail::sample_without_replacement(std::move(full_rows), k, rng);
        for (std::size_t c = 0; c < k; ++c) {
            const auto src = data.row(picked[c]);
            std::copy(src.begin(), src.end(), centroids.row(c).begin());
        }
        return ClusterModel(std::move(centroids));
    }

    // Not enough complete rows: best-observed rows, gaps filled with feature means.
    std::vector<double> feature_mean(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!mask.observed(i, j)) continue;
            sum += data.points()(i, j);
            ++count;
        }
        if (count > 0) feature_mean[j] = sum / static_cast<double>(count);
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return mask.observed_count(a) > mask.observed_count(b);
    });
    for (std::size_t c = 0; c < k; ++c) {
        const std::size_t i = order[c];
        for (std::size_t j = 0; j < d; ++j) {
            centroids(c, j) = mask.observed(i, j) ? data.points()(i, j) : feature_mean[j];
        }
    }
    return ClusterModel(std::move(centroids));
}

void initial_imputation(CompletedDataset& cd, const ClusterModel& model, Rng& rng) {
    const auto& mask = cd.mask();
    if (model.dims() != mask.cols()) throw DimensionError("model dimensions differ from data dimensions");
    for (std::size_t i = 0; i < mask.rows(); ++i) {
        for (std::size_t j = 0; j < mask.cols(); ++j) {
            if (mask.observed(i, j)) continue;
            const std::size_t c = rng.index(model.k());
            cd.set_unobserved(i, j, model.centroids()(c, j));
        }
    }
}

void impute_step(CompletedDataset& cd, const Assignment& asg, const ClusterModel& model) {
    const auto& mask = cd.mask();
    if (model.dims() != mask.cols()) throw DimensionError("model dimensions differ from data dimensions");
    check_assignment(asg, mask.rows(), model.k());
    for (std::size_t i = 0; i < mask.rows(); ++i) {
        for (std::size_t j = 0; j < mask.cols(); ++j) {
            if (!mask.observed(i, j)) cd.set_unobserved(i, j, model.centroids()(asg[i], j));
        }
    }
}

LloydResult run_mm(const Dataset& data, const ObservationMask& mask, const RunConfig& cfg) {
    cfg.validate(data.size());
    check_mask_shape(data.points(), mask);
    const auto start = std::chrono::steady_clock::now();

    Rng rng(cfg.seed);
    LloydResult result;
    result.model = init_fully_observed(data, mask, cfg.k, rng);
    result.trace.initial = result.model.centroids();
    CompletedDataset cd(data, mask);
    initial_imputation(cd, result.model, rng);

    for (std::size_t n = 1; n <= cfg.max_iter; ++n) {
        result.assignment = assign_step(cd.working(), result.model);
        auto next = centroid_update_step(cd.working(), result.assignment, cfg.k, result.model);
        const double movement = centroid_movement(next, result.model);
        result.model = std::move(next);
        impute_step(cd, result.assignment, result.model);
        const double objective = objective_observed(data, mask, result.assignment, result.model);
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
