#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "mmkmeans/errors.hpp"
#include "mmkmeans/metrics.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

using namespace mmkmeans;
using Labels = std::vector<std::size_t>;

namespace {

ContingencyTable table(const Labels& truth, const Labels& pred) { return ContingencyTable::from_labels(truth, pred); }

Labels relabel(const Labels& labels, std::mt19937_64& rng) {
    const std::size_t top = *std::max_element(labels.begin(), labels.end()) + 1;
    Labels perm(top);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    Labels out;
    for (auto l : labels) out.push_back(perm[l] * 3 + 5);  // also non-contiguous ids
    return out;
}

}  // namespace

TEST_CASE("contingency table") {
    const Labels truth{0, 0, 1, 1, 2};
    const auto same = table(truth, {4, 4, 7, 7, 9});
    CHECK(same.classes() == 3);
    CHECK(same.clusters() == 3);
    CHECK(same.count(0, 0) == 2);
    CHECK(same.count(1, 1) == 2);
    CHECK(same.count(2, 2) == 1);
    CHECK(same.count(0, 1) == 0);

    const auto constant = table(truth, {3, 3, 3, 3, 3});
    CHECK(constant.clusters() == 1);
    CHECK(constant.count(0, 0) == 2);
    CHECK(constant.count(2, 0) == 1);

    CHECK_THROWS_AS(table({0, 1}, {0}), DimensionError);
    CHECK_THROWS_AS(table({}, {}), DimensionError);
}

TEST_CASE("contingency counts match a double-loop tally") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto truth = instances::random_labels(40, 4, rng);
        const auto pred = instances::random_labels(40, 5, rng);
        const auto ct = table(truth, pred);
        Labels tv(truth), pv(pred);
        std::sort(tv.begin(), tv.end());
        tv.erase(std::unique(tv.begin(), tv.end()), tv.end());
        std::sort(pv.begin(), pv.end());
        pv.erase(std::unique(pv.begin(), pv.end()), pv.end());
        std::size_t sum = 0;
        for (std::size_t c = 0; c < tv.size(); ++c) {
            for (std::size_t k = 0; k < pv.size(); ++k) {
                std::size_t tally = 0;
                for (std::size_t i = 0; i < 40; ++i) tally += truth[i] == tv[c] && pred[i] == pv[k];
                CHECK(ct.count(c, k) == tally);
                sum += tally;
            }
        }
        CHECK(sum == ct.total());
    }
}

TEST_CASE("homogeneity, completeness and V-measure") {
    const auto perfect = homogeneity_completeness_v(table({0, 0, 1, 1, 2}, {1, 1, 0, 0, 2}));
    CHECK(perfect.homogeneity == doctest::Approx(1.0));
    CHECK(perfect.completeness == doctest::Approx(1.0));
    CHECK(perfect.v_measure == doctest::Approx(1.0));

    const auto constant = homogeneity_completeness_v(table({0, 0, 1, 1}, {0, 0, 0, 0}));
    CHECK(constant.homogeneity == 0.0);
    CHECK(constant.completeness == 1.0);
    CHECK(constant.v_measure == 0.0);

    const Labels truth{0, 0, 1, 1}, pred{0, 1, 2, 3};
    const auto split = homogeneity_completeness_v(table(truth, pred));
    const double h = 1.0 - oracle::conditional_entropy(truth, pred) / oracle::entropy(truth);
    const double c = 1.0 - oracle::conditional_entropy(pred, truth) / oracle::entropy(pred);
    CHECK(split.homogeneity == doctest::Approx(h));
    CHECK(split.homogeneity == doctest::Approx(1.0));
    CHECK(split.completeness == doctest::Approx(c));
    CHECK(split.completeness == doctest::Approx(0.5));
    CHECK(split.v_measure == doctest::Approx(2 * h * c / (h + c)));
}

TEST_CASE("entropy-based scores match the hand-entropy oracle on random labelings") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const auto truth = instances::random_labels(30, 3, rng);
        const auto pred = instances::random_labels(30, 4, rng);
        const auto ct = table(truth, pred);
        CHECK(mutual_information(ct) == doctest::Approx(oracle::mutual_information(truth, pred)).epsilon(1e-12));
        const double ht = oracle::entropy(truth), hp = oracle::entropy(pred);
        const auto hcv = homogeneity_completeness_v(ct);
        CHECK(hcv.homogeneity == doctest::Approx(1.0 - oracle::conditional_entropy(truth, pred) / ht).epsilon(1e-12));
        CHECK(hcv.completeness == doctest::Approx(1.0 - oracle::conditional_entropy(pred, truth) / hp).epsilon(1e-12));
    }
}

TEST_CASE("swapping truth and prediction swaps homogeneity and completeness exactly") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = instances::random_labels(25, 3, rng);
        const auto b = instances::random_labels(25, 5, rng);
        const auto ab = homogeneity_completeness_v(table(a, b));
        const auto ba = homogeneity_completeness_v(table(b, a));
        CHECK(ab.homogeneity == ba.completeness);
        CHECK(ab.completeness == ba.homogeneity);
        CHECK(ab.v_measure == ba.v_measure);
    }
}

TEST_CASE("adjusted rand index") {
    CHECK(adjusted_rand_index(table({0, 0, 1, 1, 2}, {0, 0, 1, 1, 2})) == 1.0);
    CHECK(adjusted_rand_index(table({0, 0, 1, 1, 2}, {2, 2, 0, 0, 1})) == 1.0);
    CHECK(adjusted_rand_index(table({0, 0, 1, 1}, {0, 1, 0, 1})) == doctest::Approx(-0.5));
    CHECK(oracle::pair_counting_ari({0, 0, 1, 1}, {0, 1, 0, 1}) == doctest::Approx(-0.5));
    CHECK(adjusted_rand_index(table({0, 0, 0}, {1, 1, 1})) == 1.0);
    CHECK_THROWS_AS(adjusted_rand_index(table({0}, {0})), UndefinedMetricError);
}

TEST_CASE("ARI matches the O(m^2) pair classifier") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<std::size_t> m_dist(2, 50), k_dist(1, 6);
        const std::size_t m = m_dist(rng);
        const auto truth = instances::random_labels(m, k_dist(rng), rng);
        const auto pred = instances::random_labels(m, k_dist(rng), rng);
        CHECK(adjusted_rand_index(table(truth, pred)) ==
              doctest::Approx(oracle::pair_counting_ari(truth, pred)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("ARI of independent labelings averages to zero") {
    std::mt19937_64 rng(31);
    double sum = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        sum += adjusted_rand_index(table(instances::random_labels(200, 3, rng), instances::random_labels(200, 4, rng)));
    }
    CHECK(std::abs(sum / 1000.0) <= 0.02);
}

TEST_CASE("adjusted mutual information") {
    CHECK(adjusted_mutual_information(table({0, 0, 1, 1, 2, 2}, {1, 1, 2, 2, 0, 0})) == doctest::Approx(1.0));
    CHECK(adjusted_mutual_information(table({0, 0, 1, 1, 2, 2}, {0, 0, 0, 0, 0, 0})) == 0.0);
    CHECK(adjusted_mutual_information(table({0, 0, 0}, {0, 0, 0})) == 1.0);
}

TEST_CASE("expected MI matches a permutation-sampling estimate") {
    const Labels truth{0, 0, 0, 1, 1, 2};
    const Labels pred{0, 0, 1, 1, 2, 2};
    const auto mc = oracle::permutation_expected_mi(truth, pred, 100000, 7);
    const double emi = expected_mutual_information(table(truth, pred));
    CHECK(std::abs(emi - mc.mean) <= 3.0 * mc.std_error);
}

TEST_CASE("silhouette") {
    const Matrix line{{0.0}, {1.0}, {10.0}, {11.0}};
    const Labels two{0, 0, 1, 1};
    const double expected = oracle::all_pairs_silhouette({{0.0}, {1.0}, {10.0}, {11.0}}, two);
    CHECK(silhouette(line, two) == doctest::Approx(expected).epsilon(1e-12));
    // outer points: a=1, b=10.5; inner points: a=1, b=9.5
    CHECK(expected == doctest::Approx((9.5 / 10.5 + 8.5 / 9.5) / 2.0).epsilon(1e-15));

    // Two coincident points split across clusters score <= 0.
    const Matrix dup{{0.0, 0.0}, {0.0, 0.0}, {5.0, 5.0}, {-5.0, 5.0}};
    const Labels dup_labels{0, 1, 0, 1};
    const std::vector<std::vector<double>> dup_rows{{0, 0}, {0, 0}, {5, 5}, {-5, 5}};
    CHECK(silhouette(dup, dup_labels) == doctest::Approx(oracle::all_pairs_silhouette(dup_rows, dup_labels)));

    // Singleton cluster contributes 0.
    CHECK(silhouette(Matrix{{0.0}, {0.1}, {10.0}}, Labels{0, 0, 1}) ==
          doctest::Approx(oracle::all_pairs_silhouette({{0.0}, {0.1}, {10.0}}, {0, 0, 1})));

    CHECK_THROWS_AS(silhouette(line, Labels{0, 0, 0, 0}), UndefinedMetricError);
    CHECK_THROWS_AS(silhouette(line, Labels{0, 1}), DimensionError);
}

TEST_CASE("silhouette of far-apart tight clusters approaches 1") {
    std::mt19937_64 rng(37);
    std::normal_distribution<double> n01;
    Matrix pts(40, 2);
    Labels labels(40);
    for (std::size_t i = 0; i < 40; ++i) {
        labels[i] = i % 2;
        pts(i, 0) = n01(rng) + (labels[i] ? 1e6 : 0.0);
        pts(i, 1) = n01(rng);
    }
    CHECK(silhouette(pts, labels) >= 0.99);
}

TEST_CASE("silhouette is invariant to translation and positive scaling") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const auto data = instances::clustered_dataset(30, 3, 3, rng, 5.0);
        Matrix moved = data.points();
        for (std::size_t i = 0; i < moved.rows(); ++i) {
            for (std::size_t j = 0; j < moved.cols(); ++j) moved(i, j) = 3.7 * moved(i, j) - 12.5;
        }
        CHECK(silhouette(moved, data.labels()) ==
              doctest::Approx(silhouette(data.points(), data.labels())).epsilon(1e-9));
    }
}

TEST_CASE("all metrics are exactly invariant to relabeling") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        const auto data = instances::clustered_dataset(40, 2, 3, rng, 6.0);
        const auto pred = instances::random_labels(40, 4, rng);
        const auto base = score_partition(data, pred, 0.0);
        const auto renamed = score_partition(data, relabel(pred, rng), 0.0);
        CHECK(base.homogeneity == renamed.homogeneity);
        CHECK(base.completeness == renamed.completeness);
        CHECK(base.v_measure == renamed.v_measure);
        CHECK(base.ari == renamed.ari);
        CHECK(base.ami == renamed.ami);
        CHECK(base.silhouette == renamed.silhouette);
    }
}
