#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mmkmeans/harness/io.hpp"
#include "mmkmeans/metrics.hpp"
#include "mmkmeans/synthgen.hpp"

namespace mmkmeans::harness {

/// Stream of `RunRequest::config.seed` used to draw the missingness mask.
inline constexpr std::uint64_t kMaskStream = 1;

struct RunRequest {
    Algorithm algo = Algorithm::mm;
    RunConfig config;
    double missing = 0.0;
};

struct RunOutcome {
    ObservationMask mask;
    LloydResult fit;
};

/// Draws the mask from derive_seed(config.seed, kMaskStream) and fits the
/// selected solver with config.seed. Lloyd with missing > 0 is a ConfigError.
RunOutcome execute_run(const Dataset& data, const RunRequest& request);

/// Labels of the complete source points under the nearest final centroid.
/// These are the labels every report scores, for both solvers.
std::vector<std::size_t> predict_labels(const Dataset& data, const ClusterModel& model);

struct ReportRow {
    std::string dataset;
    std::string algorithm;
    double missing = 0.0;
    MetricReport metrics;
};

ReportRow score_fit(const std::string& dataset_name, Algorithm algo, double missing, const Dataset& data,
                    const ClusterModel& model, double elapsed_seconds);
/// The ground truth scored as a prediction ("original dataset" row).
ReportRow score_ground_truth(const std::string& dataset_name, const Dataset& data);

/// Joins a result file with the dataset it references. Throws IntegrityError
/// when the digest or shapes disagree.
ReportRow score_result(const ResultFile& result, const Dataset& data);

/// Columns: Dataset,Algorithm,Missing,Time,Homogeneity,Completeness,V-measure,ARI,AMI,Silhouette.
void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);

/// The experiment grid: families x replicates x missing fractions x solvers.
struct ExperimentPlan {
    std::vector<Family> families{kAllFamilies.begin(), kAllFamilies.end()};
    std::size_t replicates = 1;
    std::uint64_t master_seed = 0;
    std::vector<double> fractions{0.0, 0.1, 0.3, 0.5};
    std::vector<Algorithm> algorithms{Algorithm::lloyd, Algorithm::mm};
    /// Also run MM at fraction 0 (zero-missing equivalence rows).
    bool mm_on_complete = false;
    std::size_t n = 500;
    double noise = 0.05;
    bool standardize = true;
    double epsilon = 1e-6;
    std::size_t max_iter = 100;
    /// Worker threads; 0 picks the hardware concurrency.
    std::size_t threads = 0;
    std::optional<std::filesystem::path> output_dir;

    /// Throws ConfigError for an empty grid, fractions outside [0, 1], or
    /// fractions above 0 without the mm solver.
    void validate() const;
};

struct ExperimentCell {
    Family family = Family::blobs;
    std::size_t replicate = 0;
    std::size_t fraction_index = 0;
    double missing = 0.0;
    Algorithm algo = Algorithm::mm;
    /// Shared by every cell of one (family, replicate).
    std::uint64_t dataset_seed = 0;
    /// Shared by both solvers at one (family, replicate, fraction).
    std::uint64_t run_seed = 0;
};

/// Seed of the dataset generated for one (family, replicate) of the plan.
std::uint64_t dataset_seed_for(const ExperimentPlan& plan, Family family, std::size_t replicate);

/// Cells in report order: family, replicate, fraction, solver.
std::vector<ExperimentCell> enumerate_cells(const ExperimentPlan& plan);

DatasetSpec dataset_spec_for(const ExperimentPlan& plan, Family family, std::uint64_t dataset_seed);

struct CellResult {
    ExperimentCell cell;
    RunOutcome outcome;
    ReportRow row;
};

/// Runs every cell (in parallel when threads != 1) and, when output_dir is
/// set, writes datasets/, runs/ and report.csv below it. Results are
/// independent of the thread count.
std::vector<CellResult> run_plan(const ExperimentPlan& plan);

}  // namespace mmkmeans::harness
