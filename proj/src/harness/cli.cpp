#include "mmkmeans/harness/cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "mmkmeans/errors.hpp"
#include "mmkmeans/harness/pipeline.hpp"
#include "mmkmeans/harness/plot.hpp"

namespace mmkmeans::harness {

namespace fs = std::filesystem;

namespace {

constexpr int kRuntimeError = 1;
constexpr int kUsageError = 2;

std::vector<std::string> family_names() {
    std::vector<std::string> names;
    for (Family f : kAllFamilies) names.emplace_back(to_string(f));
    return names;
}

// Path of `target` as seen from the directory holding `anchor_file`.
std::string relative_to(const fs::path& anchor_file, const fs::path& target) {
    const auto base = fs::absolute(anchor_file).lexically_normal().parent_path();
    auto rel = fs::absolute(target).lexically_normal().lexically_relative(base);
    return rel.empty() ? fs::absolute(target).lexically_normal().string() : rel.generic_string();
}

struct GenOptions {
    std::string family;
    std::size_t n = 500;
    double noise = 0.05;
    std::uint64_t seed = 0;
    std::optional<std::uint32_t> layout_seed;
    bool raw = false;
    std::string out;
};

struct RunOptions {
    std::string data;
    std::string algo = "mm";
    double missing = 0.0;
    std::size_t k = 0;
    std::size_t iters = 100;
    double epsilon = 1e-6;
    std::uint64_t seed = 0;
    std::string out;
    std::string mask_out;
    std::string name;
};

struct ReportOptions {
    std::vector<std::string> results;
    std::string out;
    bool include_original = false;
};

struct PlotOptions {
    std::string result;
    std::string points_out;
    std::string svg_out;
};

struct ExperimentOptions {
    std::string out;
    std::size_t replicates = 1;
    std::uint64_t master_seed = 0;
    std::size_t threads = 0;
    std::vector<std::string> families;
    bool raw = false;
    bool mm_on_complete = false;
};

int do_gen(const GenOptions& o, std::ostream& out) {
    DatasetSpec spec;
    spec.family = parse_family(o.family);
    spec.n = o.n;
    spec.noise = o.noise;
    spec.seed = o.seed;
    spec.layout_seed = o.layout_seed;
    spec.standardize = !o.raw;
    const auto data = generate(spec);
    save_dataset(o.out, data);
    out << "wrote " << data.size() << " samples to " << o.out << '\n';
    return 0;
}

int do_run(const RunOptions& o, std::ostream& out) {
    RunRequest request;
    request.algo = parse_algorithm(o.algo);
    request.missing = o.missing;
    request.config.k = o.k;
    request.config.max_iter = o.iters;
    request.config.epsilon = o.epsilon;
    request.config.seed = o.seed;
    if (request.algo == Algorithm::lloyd && o.missing > 0.0) {
        throw ConfigError("lloyd requires complete data; use --algo mm for --missing above 0");
    }

    const auto data = load_dataset(o.data);
    const auto outcome = execute_run(data, request);

    ResultFile result;
    result.algo = request.algo;
    result.config = request.config;
    result.missing = request.missing;
    result.dataset_path = relative_to(o.out, o.data);
    result.dataset_name = o.name.empty() ? fs::path(o.data).stem().string() : o.name;
    result.dataset_digest = dataset_digest(data);
    if (request.missing > 0.0) {
        fs::path mask_path = o.mask_out;
        if (mask_path.empty()) mask_path = fs::path(o.out).replace_extension(".mask.csv");
        save_mask(mask_path, outcome.mask);
        result.mask_path = relative_to(o.out, mask_path);
    }
    result.fit = outcome.fit;
    save_result(o.out, result);
    out << to_string(result.algo) << ": " << outcome.fit.trace.iterations.size() << " iterations, "
        << (outcome.fit.trace.converged ? "converged" : "iteration budget reached") << ", wrote " << o.out << '\n';
    return 0;
}

int do_report(const ReportOptions& o, std::ostream& out) {
    std::map<std::string, Dataset> datasets;
    std::vector<ReportRow> rows;
    for (const auto& file : o.results) {
        const auto result = load_result(file);
        const auto data_path = resolve_relative(file, result.dataset_path).lexically_normal().string();
        auto it = datasets.find(data_path);
        if (it == datasets.end()) {
            it = datasets.emplace(data_path, load_dataset(data_path)).first;
            if (o.include_original) rows.push_back(score_ground_truth(result.dataset_name, it->second));
        }
        rows.push_back(score_result(result, it->second));
    }
    if (o.out.empty()) {
        write_report_csv(out, rows);
    } else {
        std::ofstream file(o.out);
        if (!file) throw IoError("cannot open '" + o.out + "' for writing");
        write_report_csv(file, rows);
    }
    return 0;
}

int do_plot(const PlotOptions& o, std::ostream& out) {
    if (o.points_out.empty() && o.svg_out.empty()) {
        throw ConfigError("plot needs --points-out and/or --svg-out");
    }
    const auto result = load_result(o.result);
    const auto data = load_dataset(resolve_relative(o.result, result.dataset_path));
    if (dataset_digest(data) != result.dataset_digest) {
        throw IntegrityError("dataset does not match the digest recorded in " + o.result);
    }
    if (data.dims() != 2) throw UnsupportedPlotError("scatter plots need 2-D data, got d=" + std::to_string(data.dims()));
    std::optional<ObservationMask> mask;
    if (result.mask_path) mask = load_mask(resolve_relative(o.result, *result.mask_path));
    const auto labels = predict_labels(data, result.fit.model);
    const ObservationMask* mask_ptr = mask ? &*mask : nullptr;

    if (!o.points_out.empty()) {
        std::ofstream file(o.points_out);
        if (!file) throw IoError("cannot open '" + o.points_out + "' for writing");
        write_points_csv(file, data, labels, mask_ptr);
    }
    if (!o.svg_out.empty()) {
        std::ofstream file(o.svg_out);
        if (!file) throw IoError("cannot open '" + o.svg_out + "' for writing");
        char title[96];
        std::snprintf(title, sizeof(title), "%s, %.0f%% missing", std::string(display_name(result.algo)).c_str(),
                      result.missing * 100.0);
        file << render_scatter_svg(data, labels, mask_ptr, result.fit.model, result.dataset_name + ": " + title);
    }
    out << "plotted " << data.size() << " points\n";
    return 0;
}

int do_experiment(const ExperimentOptions& o, std::ostream& out) {
    ExperimentPlan plan;
    if (!o.families.empty()) {
        plan.families.clear();
        for (const auto& name : o.families) plan.families.push_back(parse_family(name));
    }
    plan.replicates = o.replicates;
    plan.master_seed = o.master_seed;
    plan.threads = o.threads;
    plan.standardize = !o.raw;
    plan.mm_on_complete = o.mm_on_complete;
    plan.output_dir = o.out;
    const auto results = run_plan(plan);
    std::vector<ReportRow> rows;
    for (const auto& r : results) rows.push_back(r.row);
    write_report_csv(out, rows);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"K-means and MM K-means for incomplete data: datasets, runs, reports, plots", "mmkmeans"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a labeled synthetic dataset CSV");
    gen_cmd->add_option("--family", gen.family, "Dataset family")->required()->check(CLI::IsMember(family_names()));
    gen_cmd->add_option("--n", gen.n, "Sample count")->capture_default_str();
    gen_cmd->add_option("--noise", gen.noise, "Jitter std-dev for circles and moons")->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "Sampling seed")->capture_default_str();
    gen_cmd->add_option("--layout-seed", gen.layout_seed, "Blob center layout seed");
    gen_cmd->add_flag("--raw", gen.raw, "Skip per-feature standardization");
    gen_cmd->add_option("--out", gen.out, "Output CSV path")->required();

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Fit K-means or MM K-means and write a JSON result");
    run_cmd->add_option("--data", run.data, "Dataset CSV")->required();
    run_cmd->add_option("--algo", run.algo, "Solver")->check(CLI::IsMember({"lloyd", "mm"}))->capture_default_str();
    run_cmd->add_option("--missing", run.missing, "Fraction of elements hidden")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    run_cmd->add_option("--k", run.k, "Cluster count")->required()->check(CLI::PositiveNumber);
    run_cmd->add_option("--iters", run.iters, "Iteration budget")->check(CLI::PositiveNumber)->capture_default_str();
    run_cmd->add_option("--epsilon", run.epsilon, "Centroid movement threshold")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    run_cmd->add_option("--seed", run.seed, "Seed for the mask and the solver")->capture_default_str();
    run_cmd->add_option("--out", run.out, "Result JSON path")->required();
    run_cmd->add_option("--mask-out", run.mask_out, "Mask CSV path (default: <out>.mask.csv)");
    run_cmd->add_option("--name", run.name, "Dataset name in reports (default: file stem)");

    ReportOptions report;
    auto* report_cmd = app.add_subcommand("report", "Score result files into a metrics table CSV");
    report_cmd->add_option("--results", report.results, "Result JSON files")->required();
    report_cmd->add_option("--out", report.out, "Report CSV path (default: stdout)");
    report_cmd->add_flag("--include-original", report.include_original,
                         "Add a ground-truth row per dataset");

    PlotOptions plot;
    auto* plot_cmd = app.add_subcommand("plot", "Write plot data CSV and an SVG scatter for a 2-D result");
    plot_cmd->add_option("--result", plot.result, "Result JSON")->required();
    plot_cmd->add_option("--points-out", plot.points_out, "Points CSV path");
    plot_cmd->add_option("--svg-out", plot.svg_out, "SVG path");

    ExperimentOptions experiment;
    auto* exp_cmd = app.add_subcommand("experiment", "Run the full dataset x missingness x solver grid");
    exp_cmd->add_option("--out", experiment.out, "Output directory")->required();
    exp_cmd->add_option("--replicates", experiment.replicates, "Seeds per dataset family")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    exp_cmd->add_option("--master-seed", experiment.master_seed, "Master seed")->capture_default_str();
    exp_cmd->add_option("--threads", experiment.threads, "Worker threads (0 = all cores)")->capture_default_str();
    exp_cmd->add_option("--families", experiment.families, "Subset of families")
        ->check(CLI::IsMember(family_names()));
    exp_cmd->add_flag("--raw", experiment.raw, "Skip per-feature standardization");
    exp_cmd->add_flag("--mm-on-complete", experiment.mm_on_complete, "Also run MM at 0% missing");

    std::vector<std::string> argv_storage{"mmkmeans"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (gen_cmd->parsed()) return do_gen(gen, out);
        if (run_cmd->parsed()) return do_run(run, out);
        if (report_cmd->parsed()) return do_report(report, out);
        if (plot_cmd->parsed()) return do_plot(plot, out);
        if (exp_cmd->parsed()) return do_experiment(experiment, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kUsageError;
}

}  // namespace mmkmeans::harness
