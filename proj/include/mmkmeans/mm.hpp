#pragma once

#include <cstddef>

#include "mmkmeans/lloyd.hpp"
#include "mmkmeans/random.hpp"
#include "mmkmeans/types.hpp"

namespace mmkmeans {

/// Working copy of a dataset whose unobserved slots are filled in by the solver.
///
/// Observed slots hold the source values and cannot be written. Unobserved
/// slots start at 0.0 (never the hidden source value) until imputed.
class CompletedDataset {
public:
    CompletedDataset(const Dataset& source, ObservationMask mask);

    const Dataset& source() const noexcept { return *source_; }
    const ObservationMask& mask() const noexcept { return mask_; }
    const Matrix& working() const noexcept { return working_; }

    /// Throws DataError if (i, j) is observed or value is not finite.
    void set_unobserved(std::size_t i, std::size_t j, double value);

private:
    const Dataset* source_;
    ObservationMask mask_;
    Matrix working_;
};

/// Picks k distinct fully-observed rows at random. With fewer than k such
/// rows, takes the k rows with the most observed coordinates (ties by row
/// index) and fills their gaps with the per-feature mean of observed values
/// (0.0 for a feature with no observed value). With an all-true mask this
/// draws exactly what init_random_samples draws.
ClusterModel init_fully_observed(const Dataset& data, const ObservationMask& mask, std::size_t k,
                                 Rng& rng);

/// Sets every unobserved slot (i, j), in row-major order, to coordinate j of
/// a centroid drawn uniformly and independently per slot.
void initial_imputation(CompletedDataset& cd, const ClusterModel& model, Rng& rng);

/// Sets every unobserved slot of row i to the matching coordinate of i's centroid.
void impute_step(CompletedDataset& cd, const Assignment& asg, const ClusterModel& model);

/// MM K-means: fully-observed initialization, random initial imputation, then
/// assign / update / impute until the centroid movement is <= cfg.epsilon or
/// cfg.max_iter iterations ran. The trace objective is the observed-data
/// objective after each impute step; it never increases.
LloydResult run_mm(const Dataset& data, const ObservationMask& mask, const RunConfig& cfg);

}  // namespace mmkmeans
