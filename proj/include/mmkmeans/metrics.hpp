#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mmkmeans/types.hpp"

namespace mmkmeans {

/// Counts of (true class, predicted cluster) pairs.
///
/// Label values are compacted to 0..L-1 and 0..K-1 in increasing order of
/// the original ids, so arbitrary non-negative ids are accepted.
class ContingencyTable {
public:
    /// Throws DimensionError for unequal lengths or empty input.
    static ContingencyTable from_labels(std::span<const std::size_t> truth,
                                        std::span<const std::size_t> pred);

    std::size_t classes() const noexcept { return row_sums_.size(); }
    std::size_t clusters() const noexcept { return col_sums_.size(); }
    std::size_t total() const noexcept { return total_; }
    std::size_t count(std::size_t c, std::size_t k) const noexcept { return counts_[c * clusters() + k]; }
    const std::vector<std::size_t>& row_sums() const noexcept { return row_sums_; }
    const std::vector<std::size_t>& col_sums() const noexcept { return col_sums_; }

    ContingencyTable transposed() const;

private:
    std::vector<std::size_t> counts_;
    std::vector<std::size_t> row_sums_;
    std::vector<std::size_t> col_sums_;
    std::size_t total_ = 0;
};

struct HomogeneityCompleteness {
    double homogeneity = 0.0;
    double completeness = 0.0;
    double v_measure = 0.0;
};

// Entropies are in nats. Every floating sum below adds its terms in sorted
// order, so relabeling either partition leaves the results bit-identical.

double class_entropy(const ContingencyTable& ct);    ///< H(C), truth marginal
double cluster_entropy(const ContingencyTable& ct);  ///< H(P), prediction marginal
double mutual_information(const ContingencyTable& ct);
/// E[MI] under the hypergeometric model with both marginals fixed.
double expected_mutual_information(const ContingencyTable& ct);

/// h = 1 - H(C|P)/H(C) (1 when H(C) = 0), c = 1 - H(P|C)/H(P) (1 when
/// H(P) = 0), v = their harmonic mean (0 when h + c = 0).
HomogeneityCompleteness homogeneity_completeness_v(const ContingencyTable& ct);

/// Hubert-Arabie ARI. Returns 1 when the denominator vanishes. Throws
/// UndefinedMetricError for fewer than two samples.
double adjusted_rand_index(const ContingencyTable& ct);

/// AMI with arithmetic-mean normalization. Returns 1 when the denominator
/// vanishes and MI equals its expectation.
double adjusted_mutual_information(const ContingencyTable& ct);

/// Mean silhouette with Euclidean distances. Singleton clusters score 0.
/// Throws UndefinedMetricError with fewer than two distinct labels and
/// DimensionError when pred does not have one label per row.
double silhouette(const Matrix& points, std::span<const std::size_t> pred);

struct MetricReport {
    double time_seconds = 0.0;
    double homogeneity = 0.0;
    double completeness = 0.0;
    double v_measure = 0.0;
    double ari = 0.0;
    double ami = 0.0;
    double silhouette = 0.0;
};

/// All six scores of `pred` against the dataset's labels and geometry.
MetricReport score_partition(const Dataset& data, std::span<const std::size_t> pred, double time_seconds);

}  // namespace mmkmeans
