#include "mmkmeans/harness/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <thread>

#include "mmkmeans/errors.hpp"
#include "mmkmeans/mm.hpp"

namespace mmkmeans::harness {

namespace {

std::string fixed3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    // Rounded negative zero prints as "-0.000"; the table shows "0.000".
    if (std::string_view(buf) == "-0.000") return "0.000";
    return buf;
}

std::string dataset_stem(Family family, std::size_t replicate) {
    return std::string(to_string(family)) + "_r" + std::to_string(replicate);
}

std::string run_stem(const ExperimentCell& cell) {
    char pct[8];
    std::snprintf(pct, sizeof(pct), "%03d", static_cast<int>(std::lround(cell.missing * 100.0)));
    return dataset_stem(cell.family, cell.replicate) + "_" + std::string(to_string(cell.algo)) + "_m" + pct;
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    {
        std::vector<std::jthread> workers;
        for (std::size_t t = 0; t < threads; ++t) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < count && !failed; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        if (!failed.exchange(true)) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

RunOutcome execute_run(const Dataset& data, const RunRequest& request) {
    if (!(request.missing >= 0.0 && request.missing <= 1.0)) {
        throw ConfigError("missing fraction must lie in [0, 1]");
    }
    if (request.algo == Algorithm::lloyd && request.missing > 0.0) {
        throw ConfigError("lloyd requires complete data; use --algo mm for a missing fraction above 0");
    }
    request.config.validate(data.size());
    RunOutcome outcome;
    Rng mask_rng(derive_seed(request.config.seed, kMaskStream));
    outcome.mask = inject_missing(data, request.missing, mask_rng);
    outcome.fit = request.algo == Algorithm::lloyd ? run_lloyd(data, request.config)
                                                   : run_mm(data, outcome.mask, request.config);
    return outcome;
}

std::vector<std::size_t> predict_labels(const Dataset& data, const ClusterModel& model) {
    return assign_step(data, model).cluster_of;
}

ReportRow score_fit(const std::string& dataset_name, Algorithm algo, double missing, const Dataset& data,
                    const ClusterModel& model, double elapsed_seconds) {
    const auto labels = predict_labels(data, model);
    return {dataset_name, std::string(display_name(algo)), missing, score_partition(data, labels, elapsed_seconds)};
}

ReportRow score_ground_truth(const std::string& dataset_name, const Dataset& data) {
    return {dataset_name, "original dataset", 0.0, score_partition(data, data.labels(), 0.0)};
}

ReportRow score_result(const ResultFile& result, const Dataset& data) {
    if (dataset_digest(data) != result.dataset_digest) {
        throw IntegrityError("dataset '" + result.dataset_path + "' does not match the digest recorded in the result");
    }
    if (result.fit.model.dims() != data.dims() || result.fit.assignment.size() != data.size()) {
        throw IntegrityError("result shape does not match dataset '" + result.dataset_path + "'");
    }
    return score_fit(result.dataset_name, result.algo, result.missing, data, result.fit.model,
                     result.fit.trace.elapsed_seconds);
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << "Dataset,Algorithm,Missing,Time,Homogeneity,Completeness,V-measure,ARI,AMI,Silhouette\n";
    for (const auto& row : rows) {
        const auto& m = row.metrics;
        out << row.dataset << ',' << row.algorithm << ',' << fixed3(row.missing) << ',' << fixed3(m.time_seconds)
            << ',' << fixed3(m.homogeneity) << ',' << fixed3(m.completeness) << ',' << fixed3(m.v_measure) << ','
            << fixed3(m.ari) << ',' << fixed3(m.ami) << ',' << fixed3(m.silhouette) << '\n';
    }
}

void ExperimentPlan::validate() const {
    if (families.empty() || fractions.empty() || algorithms.empty() || replicates == 0) {
        throw ConfigError("experiment plan has an empty axis");
    }
    const bool has_mm = std::find(algorithms.begin(), algorithms.end(), Algorithm::mm) != algorithms.end();
    for (double f : fractions) {
        if (!(f >= 0.0 && f <= 1.0)) throw ConfigError("missing fractions must lie in [0, 1]");
        if (f > 0.0 && !has_mm) throw ConfigError("fractions above 0 need the mm solver");
    }
    if (max_iter == 0 || !(epsilon >= 0.0)) throw ConfigError("invalid stopping rule");
}

std::uint64_t dataset_seed_for(const ExperimentPlan& plan, Family family, std::size_t replicate) {
    return derive_seed(derive_seed(plan.master_seed, static_cast<std::uint64_t>(family)), replicate);
}

std::vector<ExperimentCell> enumerate_cells(const ExperimentPlan& plan) {
    plan.validate();
    std::vector<ExperimentCell> cells;
    for (std::size_t f = 0; f < plan.families.size(); ++f) {
        for (std::size_t r = 0; r < plan.replicates; ++r) {
            const std::uint64_t dataset_seed = dataset_seed_for(plan, plan.families[f], r);
            for (std::size_t q = 0; q < plan.fractions.size(); ++q) {
                const double missing = plan.fractions[q];
                const std::uint64_t run_seed = derive_seed(dataset_seed, 1000 + q);
                for (Algorithm algo : plan.algorithms) {
                    if (algo == Algorithm::lloyd && missing > 0.0) continue;
                    if (algo == Algorithm::mm && missing == 0.0 && !plan.mm_on_complete) continue;
                    cells.push_back({plan.families[f], r, q, missing, algo, dataset_seed, run_seed});
                }
            }
        }
    }
    return cells;
}

DatasetSpec dataset_spec_for(const ExperimentPlan& plan, Family family, std::uint64_t dataset_seed) {
    DatasetSpec spec;
    spec.family = family;
    spec.n = plan.n;
    spec.noise = plan.noise;
    spec.seed = dataset_seed;
    spec.standardize = plan.standardize;
    return spec;
}

std::vector<CellResult> run_plan(const ExperimentPlan& plan) {
    const auto cells = enumerate_cells(plan);

    // One dataset per (family, replicate), generated up front and shared read-only.
    std::vector<Dataset> datasets;
    for (Family family : plan.families) {
        for (std::size_t r = 0; r < plan.replicates; ++r) {
            datasets.push_back(generate(dataset_spec_for(plan, family, dataset_seed_for(plan, family, r))));
            if (plan.output_dir) {
                save_dataset(*plan.output_dir / "datasets" / (dataset_stem(family, r) + ".csv"), datasets.back());
            }
        }
    }
    auto dataset_of = [&](const ExperimentCell& c) -> const Dataset& {
        const auto f = static_cast<std::size_t>(
            std::find(plan.families.begin(), plan.families.end(), c.family) - plan.families.begin());
        return datasets[f * plan.replicates + c.replicate];
    };

    std::vector<std::optional<CellResult>> results(cells.size());
    parallel_for(cells.size(), plan.threads, [&](std::size_t idx) {
        const auto& cell = cells[idx];
        const Dataset& data = dataset_of(cell);
        RunRequest request;
        request.algo = cell.algo;
        request.missing = cell.missing;
        request.config.k = true_cluster_count(cell.family);
        request.config.epsilon = plan.epsilon;
        request.config.max_iter = plan.max_iter;
        request.config.seed = cell.run_seed;
        auto outcome = execute_run(data, request);
        const std::string name(to_string(cell.family));
        auto row = score_fit(name, cell.algo, cell.missing, data, outcome.fit.model, outcome.fit.trace.elapsed_seconds);

        if (plan.output_dir) {
            const auto runs = *plan.output_dir / "runs";
            const auto stem = run_stem(cell);
            ResultFile file;
            file.algo = cell.algo;
            file.config = request.config;
            file.missing = cell.missing;
            file.dataset_path = "../datasets/" + dataset_stem(cell.family, cell.replicate) + ".csv";
            file.dataset_name = name;
            file.dataset_digest = dataset_digest(data);
            if (cell.missing > 0.0) {
                file.mask_path = stem + ".mask.csv";
                save_mask(runs / *file.mask_path, outcome.mask);
            }
            file.fit = outcome.fit;
            save_result(runs / (stem + ".json"), file);
        }
        results[idx] = CellResult{cell, std::move(outcome), std::move(row)};
    });

    std::vector<CellResult> out;
    out.reserve(results.size());
    for (auto& r : results) out.push_back(std::move(*r));

    if (plan.output_dir) {
        std::vector<ReportRow> rows;
        for (const auto& r : out) rows.push_back(r.row);
        std::ofstream report(*plan.output_dir / "report.csv");
        if (!report) throw IoError("cannot write report.csv");
        write_report_csv(report, rows);
    }
    return out;
}

}  // namespace mmkmeans::harness
