#include "mmkmeans/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "mmkmeans/errors.hpp"

namespace mmkmeans {

namespace {

double sorted_sum(std::vector<double> terms) {
    std::sort(terms.begin(), terms.end());
    double sum = 0.0;
    for (double t : terms) sum += t;
    return sum;
}

std::vector<std::size_t> compact(std::span<const std::size_t> ids, std::size_t& distinct) {
    std::map<std::size_t, std::size_t> index;
    for (std::size_t id : ids) index.emplace(id, 0);
    std::size_t next = 0;
    for (auto& [id, slot] : index) slot = next++;
    distinct = next;
    std::vector<std::size_t> out(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) out[i] = index.at(ids[i]);
    return out;
}

double marginal_entropy(const std::vector<std::size_t>& sums, std::size_t total) {
    const double n = static_cast<double>(total);
    std::vector<double> terms;
    for (std::size_t s : sums) {
        if (s == 0) continue;
        const double p = static_cast<double>(s) / n;
        terms.push_back(-p * std::log(p));
    }
    return sorted_sum(std::move(terms));
}

// H(rows | cols) = -sum_ij (n_ij / N) log(n_ij / col_j).
double conditional_row_entropy(const ContingencyTable& ct) {
    const double n = static_cast<double>(ct.total());
    std::vector<double> terms;
    for (std::size_t c = 0; c < ct.classes(); ++c) {
        for (std::size_t k = 0; k < ct.clusters(); ++k) {
            const std::size_t cell = ct.count(c, k);
            if (cell == 0) continue;
            const double nij = static_cast<double>(cell);
            terms.push_back(-(nij / n) * std::log(nij / static_cast<double>(ct.col_sums()[k])));
        }
    }
    return sorted_sum(std::move(terms));
}

double pairs(std::size_t n) {
    return static_cast<double>(n) * static_cast<double>(n > 0 ? n - 1 : 0) / 2.0;
}

}  // namespace

ContingencyTable ContingencyTable::from_labels(std::span<const std::size_t> truth,
                                               std::span<const std::size_t> pred) {
    if (truth.size() != pred.size()) {
        throw DimensionError("label vectors of length " + std::to_string(truth.size()) + " and " +
                             std::to_string(pred.size()));
    }
    if (truth.empty()) throw DimensionError("label vectors are empty");
    ContingencyTable ct;
    std::size_t classes = 0;
    std::size_t clusters = 0;
    const auto t = compact(truth, classes);
    const auto p = compact(pred, clusters);
    ct.counts_.assign(classes * clusters, 0);
    ct.row_sums_.assign(classes, 0);
    ct.col_sums_.assign(clusters, 0);
    for (std::size_t i = 0; i < t.size(); ++i) {
        ++ct.counts_[t[i] * clusters + p[i]];
        ++ct.row_sums_[t[i]];
        ++ct.col_sums_[p[i]];
    }
    ct.total_ = truth.size();
    return ct;
}

ContingencyTable ContingencyTable::transposed() const {
    ContingencyTable out;
    out.counts_.assign(counts_.size(), 0);
    for (std::size_t c = 0; c < classes(); ++c) {
        for (std::size_t k = 0; k < clusters(); ++k) out.counts_[k * classes() + c] = count(c, k);
    }
    out.row_sums_ = col_sums_;
    out.col_sums_ = row_sums_;
    out.total_ = total_;
    return out;
}

double class_entropy(const ContingencyTable& ct) { return marginal_entropy(ct.row_sums(), ct.total()); }

double cluster_entropy(const ContingencyTable& ct) { return marginal_entropy(ct.col_sums(), ct.total()); }

double mutual_information(const ContingencyTable& ct) {
    const double n = static_cast<double>(ct.total());
    std::vector<double> terms;
    for (std::size_t c = 0; c < ct.classes(); ++c) {
        for (std::size_t k = 0; k < ct.clusters(); ++k) {
            const std::size_t cell = ct.count(c, k);
            if (cell == 0) continue;
            const double nij = static_cast<double>(cell);
            const double outer = static_cast<double>(ct.row_sums()[c]) * static_cast<double>(ct.col_sums()[k]);
            terms.push_back((nij / n) * std::log(n * nij / outer));
        }
    }
    // Clamp rounding noise; MI is nonnegative.
    return std::max(0.0, sorted_sum(std::move(terms)));
}

double expected_mutual_information(const ContingencyTable& ct) {
    const std::size_t total = ct.total();
    const double n = static_cast<double>(total);
    const double log_n_fact = std::lgamma(n + 1.0);
    std::vector<double> terms;
    for (std::size_t a : ct.row_sums()) {
        for (std::size_t b : ct.col_sums()) {
            const double da = static_cast<double>(a);
            const double db = static_cast<double>(b);
            // log of the hypergeometric normalizer a! b! (N-a)! (N-b)! / N!
            const double log_norm = std::lgamma(da + 1.0) + std::lgamma(db + 1.0) + std::lgamma(n - da + 1.0) +
                                    std::lgamma(n - db + 1.0) - log_n_fact;
            const std::size_t lo = std::max<std::size_t>(1, a + b > total ? a + b - total : 0);
            const std::size_t hi = std::min(a, b);
            double cell_sum = 0.0;
            for (std::size_t nij = lo; nij <= hi; ++nij) {
                const double x = static_cast<double>(nij);
                const double log_p = log_norm - std::lgamma(x + 1.0) - std::lgamma(da - x + 1.0) -
                                     std::lgamma(db - x + 1.0) - std::lgamma(n - da - db + x + 1.0);
                cell_sum += (x / n) * std::log(n * x / (da * db)) * std::exp(log_p);
            }
            terms.push_back(cell_sum);
        }
    }
    return sorted_sum(std::move(terms));
}

HomogeneityCompleteness homogeneity_completeness_v(const ContingencyTable& ct) {
    const double h_class = class_entropy(ct);
    const double h_cluster = cluster_entropy(ct);
    HomogeneityCompleteness out;
    out.homogeneity = h_class == 0.0 ? 1.0 : 1.0 - conditional_row_entropy(ct) / h_class;
    out.completeness = h_cluster == 0.0 ? 1.0 : 1.0 - conditional_row_entropy(ct.transposed()) / h_cluster;
    const double denom = out.homogeneity + out.completeness;
    out.v_measure = denom == 0.0 ? 0.0 : 2.0 * (out.homogeneity * out.completeness) / denom;
    return out;
}

double adjusted_rand_index(const ContingencyTable& ct) {
    if (ct.total() < 2) throw UndefinedMetricError("ARI needs at least two samples");
    // Pair counts are integers below 2^53 for any realistic m, so these sums are exact.
    double index = 0.0;
    for (std::size_t c = 0; c < ct.classes(); ++c) {
        for (std::size_t k = 0; k < ct.clusters(); ++k) index += pairs(ct.count(c, k));
    }
    double row_pairs = 0.0;
    for (std::size_t a : ct.row_sums()) row_pairs += pairs(a);
    double col_pairs = 0.0;
    for (std::size_t b : ct.col_sums()) col_pairs += pairs(b);
    const double expected = row_pairs * col_pairs / pairs(ct.total());
    const double max_index = 0.5 * (row_pairs + col_pairs);
    const double denom = max_index - expected;
    if (denom == 0.0) return 1.0;
    return (index - expected) / denom;
}

double adjusted_mutual_information(const ContingencyTable& ct) {
    const double mi = mutual_information(ct);
    const double emi = expected_mutual_information(ct);
    const double mean_entropy = 0.5 * (class_entropy(ct) + cluster_entropy(ct));
    const double denom = mean_entropy - emi;
    const double scale = std::max({1.0, mean_entropy, emi});
    if (std::abs(denom) <= 1e-15 * scale && std::abs(mi - emi) <= 1e-15 * scale) return 1.0;
    const double eps = std::numeric_limits<double>::epsilon();
    const double safe = denom < 0.0 ? std::min(denom, -eps) : std::max(denom, eps);
    return (mi - emi) / safe;
}

double silhouette(const Matrix& points, std::span<const std::size_t> pred) {
    if (pred.size() != points.rows()) {
        throw DimensionError("silhouette needs one label per sample");
    }
    std::size_t clusters = 0;
    const auto ids = compact(pred, clusters);
    if (clusters < 2) throw UndefinedMetricError("silhouette needs at least two clusters");

    std::vector<std::size_t> sizes(clusters, 0);
    for (std::size_t id : ids) ++sizes[id];

    const std::size_t m = points.rows();
    std::vector<double> per_cluster(clusters);
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        std::fill(per_cluster.begin(), per_cluster.end(), 0.0);
        const auto xi = points.row(i);
        for (std::size_t q = 0; q < m; ++q) {
            if (q == i) continue;
            const auto xq = points.row(q);
            double sq = 0.0;
            for (std::size_t j = 0; j < xi.size(); ++j) {
                const double diff = xi[j] - xq[j];
                sq += diff * diff;
            }
            per_cluster[ids[q]] += std::sqrt(sq);
        }
        const std::size_t own = ids[i];
        if (sizes[own] == 1) continue;  // s(i) = 0
        const double a = per_cluster[own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < clusters; ++c) {
            if (c == own) continue;
            b = std::min(b, per_cluster[c] / static_cast<double>(sizes[c]));
        }
        const double denom = std::max(a, b);
        if (denom > 0.0) total += (b - a) / denom;
    }
    return total / static_cast<double>(m);
}

MetricReport score_partition(const Dataset& data, std::span<const std::size_t> pred, double time_seconds) {
    const auto ct = ContingencyTable::from_labels(data.labels(), pred);
    const auto hcv = homogeneity_completeness_v(ct);
    MetricReport report;
    report.time_seconds = time_seconds;
    report.homogeneity = hcv.homogeneity;
    report.completeness = hcv.completeness;
    report.v_measure = hcv.v_measure;
    report.ari = adjusted_rand_index(ct);
    report.ami = adjusted_mutual_information(ct);
    report.silhouette = silhouette(data.points(), pred);
    return report;
}

}  // namespace mmkmeans
