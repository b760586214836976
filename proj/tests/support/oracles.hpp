#pragma once

// Brute-force reference computations for the tests. None of these call into
// the library's metric or solver code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

/// ARI from an O(m^2) walk over all sample pairs.
inline double pair_counting_ari(const std::vector<std::size_t>& truth, const std::vector<std::size_t>& pred) {
    double both = 0, only_truth = 0, only_pred = 0, neither = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        for (std::size_t q = i + 1; q < truth.size(); ++q) {
            const bool same_t = truth[i] == truth[q];
            const bool same_p = pred[i] == pred[q];
            if (same_t && same_p) ++both;
            else if (same_t) ++only_truth;
            else if (same_p) ++only_pred;
            else ++neither;
        }
    }
    const double denom = (both + only_truth) * (only_truth + neither) + (both + only_pred) * (only_pred + neither);
    if (denom == 0.0) return 1.0;
    return 2.0 * (both * neither - only_truth * only_pred) / denom;
}

/// Entropy in nats of a label vector.
inline double entropy(const std::vector<std::size_t>& labels) {
    std::map<std::size_t, double> counts;
    for (auto l : labels) counts[l] += 1.0;
    double h = 0.0;
    const double n = static_cast<double>(labels.size());
    for (auto& [l, c] : counts) h -= c / n * std::log(c / n);
    return h;
}

/// H(a | b) from joint and marginal entropies: H(a, b) - H(b).
inline double conditional_entropy(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::map<std::pair<std::size_t, std::size_t>, double> joint;
    for (std::size_t i = 0; i < a.size(); ++i) joint[{a[i], b[i]}] += 1.0;
    double h = 0.0;
    const double n = static_cast<double>(a.size());
    for (auto& [key, c] : joint) h -= c / n * std::log(c / n);
    return h - entropy(b);
}

inline double mutual_information(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return entropy(a) - conditional_entropy(a, b);
}

/// Silhouette from the full pairwise Euclidean distance matrix.
inline double all_pairs_silhouette(const std::vector<std::vector<double>>& points,
                                   const std::vector<std::size_t>& labels) {
    const std::size_t m = points.size();
    std::vector<std::vector<double>> dist(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t q = 0; q < m; ++q) {
            double s = 0.0;
            for (std::size_t j = 0; j < points[i].size(); ++j) s += (points[i][j] - points[q][j]) * (points[i][j] - points[q][j]);
            dist[i][q] = std::sqrt(s);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < m; ++i) members[labels[i]].push_back(i);
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& own = members[labels[i]];
        if (own.size() == 1) continue;
        double a = 0.0;
        for (auto q : own) a += dist[i][q];
        a /= static_cast<double>(own.size() - 1);
        double b = INFINITY;
        for (auto& [label, idx] : members) {
            if (label == labels[i]) continue;
            double s = 0.0;
            for (auto q : idx) s += dist[i][q];
            b = std::min(b, s / static_cast<double>(idx.size()));
        }
        total += (b - a) / std::max(a, b);
    }
    return total / static_cast<double>(m);
}

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// E[MI] by shuffling `pred` against `truth`; the permutation model is the
/// hypergeometric model with both marginals fixed.
inline MonteCarloEstimate permutation_expected_mi(const std::vector<std::size_t>& truth,
                                                  std::vector<std::size_t> pred, std::size_t trials,
                                                  std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        std::shuffle(pred.begin(), pred.end(), rng);
        const double mi = mutual_information(truth, pred);
        sum += mi;
        sum_sq += mi * mi;
    }
    const double n = static_cast<double>(trials);
    const double mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - mean * mean);
    return {mean, std::sqrt(var / n)};
}

/// Index of the closest centroid by exhaustive comparison; ties to the lowest index.
inline std::size_t brute_argmin(const std::vector<double>& x, const std::vector<std::vector<double>>& centroids) {
    std::size_t best = 0;
    double best_d = INFINITY;
    for (std::size_t k = 0; k < centroids.size(); ++k) {
        double d = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) d += (x[j] - centroids[k][j]) * (x[j] - centroids[k][j]);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

}  // namespace oracle
