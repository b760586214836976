#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mmkmeans/errors.hpp"
#include "mmkmeans/lloyd.hpp"
#include "mmkmeans/metrics.hpp"
#include "mmkmeans/objective.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

using namespace mmkmeans;

namespace {

bool is_data_row(const Dataset& data, std::span<const double> c) {
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (std::equal(c.begin(), c.end(), data.row(i).begin())) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("init_random_samples") {
    const Dataset data(Matrix{{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}, {4.0, 0.0}});

    SUBCASE("k = m gives a permutation of the samples") {
        Rng rng(3);
        const auto model = init_random_samples(data, 5, rng);
        std::vector<double> xs;
        for (std::size_t c = 0; c < 5; ++c) xs.push_back(model.centroids()(c, 0));
        std::sort(xs.begin(), xs.end());
        CHECK(xs == std::vector<double>{0, 1, 2, 3, 4});
    }
    SUBCASE("k = 1 picks a data row") {
        Rng rng(9);
        const auto model = init_random_samples(data, 1, rng);
        CHECK(is_data_row(data, model.centroid(0)));
    }
    SUBCASE("fixed seed is deterministic") {
        Rng a(42), b(42);
        CHECK(init_random_samples(data, 3, a) == init_random_samples(data, 3, b));
    }
    SUBCASE("k > m is rejected") {
        Rng rng(1);
        CHECK_THROWS_AS(init_random_samples(data, 6, rng), ConfigError);
        CHECK_THROWS_AS(init_random_samples(data, 0, rng), ConfigError);
    }
}

TEST_CASE("assign_step examples") {
    const ClusterModel model(Matrix{{0.0, 0.0}, {2.0, 0.0}, {5.0, 5.0}});
    const Dataset data(Matrix{{5.0, 5.0}, {1.0, 0.0}, {-3.0, 0.0}});
    const auto asg = assign_step(data, model);
    CHECK(asg[0] == 2);
    CHECK(asg[1] == 0);  // equidistant to 0 and 1
    CHECK(asg[2] == 0);
    CHECK(assign_step(data, model) == asg);
    CHECK_THROWS_AS(assign_step(data, ClusterModel(Matrix{{0.0}})), DimensionError);
}

TEST_CASE("assign_step matches exhaustive argmin") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto pts = instances::random_matrix(20, 3, rng);
        const auto cents = instances::random_matrix(4, 3, rng);
        const auto asg = assign_step(pts, ClusterModel(cents));
        std::vector<std::vector<double>> cv;
        for (std::size_t c = 0; c < 4; ++c) cv.emplace_back(cents.row(c).begin(), cents.row(c).end());
        for (std::size_t i = 0; i < 20; ++i) {
            CHECK(asg[i] == oracle::brute_argmin({pts.row(i).begin(), pts.row(i).end()}, cv));
        }
    }
}

TEST_CASE("centroid_update_step") {
    const Dataset data(Matrix{{0.0, 0.0}, {2.0, 2.0}, {7.0, -1.0}});
    const ClusterModel previous(Matrix{{9.0, 9.0}, {8.0, 8.0}, {-4.0, 3.0}});
    const auto updated = centroid_update_step(data, Assignment{{0, 0, 1}}, 3, previous);
    CHECK(updated.centroids()(0, 0) == 1.0);
    CHECK(updated.centroids()(0, 1) == 1.0);
    CHECK(updated.centroids()(1, 0) == 7.0);  // singleton
    CHECK(updated.centroids()(1, 1) == -1.0);
    CHECK(updated.centroids()(2, 0) == -4.0);  // empty cluster keeps its centroid
    CHECK(updated.centroids()(2, 1) == 3.0);
}

TEST_CASE("updated centroids minimize the complete objective along every coordinate") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 30; ++trial) {
        const auto data = instances::clustered_dataset(15, 2, 3, rng, 3.0);
        const Assignment asg{data.labels()};
        const auto model = centroid_update_step(data, asg, 3, ClusterModel(Matrix(3, 2)));
        const double best = objective_complete(data, asg, model);
        for (std::size_t c = 0; c < 3; ++c) {
            for (std::size_t j = 0; j < 2; ++j) {
                for (int step = -50; step <= 50; ++step) {
                    auto probe = model;
                    probe.centroids()(c, j) += 0.01 * step;
                    CHECK(objective_complete(data, asg, probe) >= best * (1.0 - 1e-12));
                }
            }
        }
    }
}

TEST_CASE("run_lloyd on repeated distinct points reaches zero objective") {
    Matrix pts(60, 2);
    std::vector<std::size_t> labels(60);
    const double locs[3][2] = {{0.0, 0.0}, {10.0, 0.0}, {0.0, 10.0}};
    for (std::size_t i = 0; i < 60; ++i) {
        labels[i] = i % 3;
        pts(i, 0) = locs[i % 3][0];
        pts(i, 1) = locs[i % 3][1];
    }
    const Dataset data(pts, labels);
    // Any seed whose initial picks cover all three locations.
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        RunConfig cfg{3, 1e-6, 100, seed};
        Rng rng(seed);
        const auto init = init_random_samples(data, 3, rng);
        std::vector<double> xs;
        for (std::size_t c = 0; c < 3; ++c) xs.push_back(init.centroids()(c, 0) + 3 * init.centroids()(c, 1));
        std::sort(xs.begin(), xs.end());
        if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) continue;
        const auto result = run_lloyd(data, cfg);
        CHECK(result.trace.iterations.back().objective == 0.0);
        CHECK(adjusted_rand_index(ContingencyTable::from_labels(labels, result.assignment.cluster_of)) == 1.0);
        CHECK(result.trace.converged);
        return;
    }
    FAIL("no seed covered all three locations");
}

TEST_CASE("run_lloyd on {0,1,9,10} finds the best 2-partition") {
    const Dataset data(Matrix{{0.0}, {1.0}, {9.0}, {10.0}});
    // Brute force over all 2-partitions.
    double best = INFINITY;
    std::vector<double> best_means;
    for (unsigned mask = 1; mask < 15; ++mask) {
        double s[2] = {0, 0}, n[2] = {0, 0};
        for (std::size_t i = 0; i < 4; ++i) {
            s[(mask >> i) & 1] += data.points()(i, 0);
            n[(mask >> i) & 1] += 1;
        }
        const double mu[2] = {s[0] / n[0], s[1] / n[1]};
        double cost = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            const double diff = data.points()(i, 0) - mu[(mask >> i) & 1];
            cost += diff * diff;
        }
        if (cost < best) {
            best = cost;
            best_means = {std::min(mu[0], mu[1]), std::max(mu[0], mu[1])};
        }
    }
    CHECK(best_means == std::vector<double>{0.5, 9.5});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto result = run_lloyd(data, RunConfig{2, 0.0, 100, seed});
        std::vector<double> got{result.model.centroids()(0, 0), result.model.centroids()(1, 0)};
        std::sort(got.begin(), got.end());
        CHECK(got == best_means);
        CHECK(result.trace.iterations.back().objective == doctest::Approx(best));
    }
}

TEST_CASE("run_lloyd invariants on random data") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        const auto data = instances::clustered_dataset(40, 3, 4, rng, 4.0);
        const RunConfig cfg{4, 1e-9, 50, static_cast<std::uint64_t>(trial)};
        const auto result = run_lloyd(data, cfg);
        const auto& its = result.trace.iterations;
        REQUIRE_FALSE(its.empty());
        for (std::size_t n = 0; n < its.size(); ++n) {
            CHECK(its[n].n == n + 1);
            const auto& prev = n == 0 ? result.trace.initial : its[n - 1].centroids;
            CHECK(its[n].movement == centroid_movement(ClusterModel(its[n].centroids), ClusterModel(prev)));
            if (n > 0) CHECK(its[n].objective <= its[n - 1].objective * (1.0 + 1e-9));
        }
        CHECK(result.trace.converged == (its.back().movement <= cfg.epsilon));
        if (!result.trace.converged) CHECK(its.size() == cfg.max_iter);
        const auto again = assign_step(data, result.model);
        CHECK(assign_step(data, result.model) == again);
    }
}

TEST_CASE("run_lloyd is permutation equivariant") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const auto data = instances::clustered_dataset(30, 2, 3, rng, 3.0);
        std::vector<std::size_t> perm(30);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        Matrix permuted(30, 2);
        for (std::size_t i = 0; i < 30; ++i) {
            permuted(i, 0) = data.points()(perm[i], 0);
            permuted(i, 1) = data.points()(perm[i], 1);
        }
        const Dataset shuffled(permuted);
        Rng init_rng(trial);
        const auto init = init_random_samples(data, 3, init_rng);  // same rows, found at permuted indices
        const RunConfig cfg{3, 0.0, 30, 0};
        const auto a = run_lloyd_from(data, init, cfg);
        const auto b = run_lloyd_from(shuffled, init, cfg);
        for (std::size_t c = 0; c < 3; ++c) {
            for (std::size_t j = 0; j < 2; ++j) {
                CHECK(a.model.centroids()(c, j) == doctest::Approx(b.model.centroids()(c, j)).epsilon(1e-9));
            }
        }
        for (std::size_t i = 0; i < 30; ++i) CHECK(b.assignment[i] == a.assignment[perm[i]]);
    }
}

TEST_CASE("run_lloyd rejects invalid configurations") {
    const Dataset data(Matrix{{0.0}, {1.0}});
    CHECK_THROWS_AS(run_lloyd(data, RunConfig{3, 1e-6, 100, 0}), ConfigError);
    CHECK_THROWS_AS(run_lloyd(data, RunConfig{1, -1.0, 100, 0}), ConfigError);
}
