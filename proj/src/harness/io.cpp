#include "mmkmeans/harness/io.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "mmkmeans/errors.hpp"

namespace mmkmeans::harness {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

double parse_double(const std::string& text, std::size_t line_no) {
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw IoError("line " + std::to_string(line_no) + ": cannot parse number '" + text + "'");
    }
    return value;
}

std::size_t parse_index(const std::string& text, std::size_t line_no) {
    std::size_t value = 0;
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), last, value);
    if (ec != std::errc{} || ptr != last) {
        throw IoError("line " + std::to_string(line_no) + ": cannot parse integer '" + text + "'");
    }
    return value;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

nlohmann::ordered_json matrix_to_json(const Matrix& m) {
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto r = m.row(i);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::ordered_json& rows) {
    if (!rows.is_array() || rows.empty()) throw IoError("centroids must be a nonempty array of rows");
    const std::size_t cols = rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw IoError("centroid rows differ in length");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j].get<double>();
    }
    return m;
}

}  // namespace

void write_dataset_csv(std::ostream& out, const Dataset& data) {
    for (std::size_t j = 0; j < data.dims(); ++j) out << (j ? "," : "") << 'x' << j;
    if (data.has_labels()) out << ",label";
    out << '\n';
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto row = data.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_double(row[j]);
        if (data.has_labels()) out << ',' << data.labels()[i];
        out << '\n';
    }
}

Dataset read_dataset_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("dataset file is empty");
    const auto header = split_csv_line(strip_cr(line));
    std::size_t dims = 0;
    bool labeled = false;
    for (const auto& name : header) {
        if (name == "x" + std::to_string(dims)) {
            ++dims;
        } else if (name == "label" && !labeled) {
            labeled = true;
        } else {
            throw IoError("unexpected dataset column '" + name + "'");
        }
    }
    if (dims == 0) throw IoError("dataset header has no x columns");
    if (labeled && header.back() != "label") throw IoError("label must be the last dataset column");

    std::vector<double> values;
    std::vector<std::size_t> labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw IoError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                          " fields");
        }
        for (std::size_t j = 0; j < dims; ++j) values.push_back(parse_double(fields[j], line_no));
        if (labeled) labels.push_back(parse_index(fields[dims], line_no));
    }
    const std::size_t rows = values.size() / dims;
    if (rows == 0) throw IoError("dataset file has no samples");
    Matrix points(rows, dims, std::move(values));
    if (labeled) return Dataset(std::move(points), std::move(labels));
    return Dataset(std::move(points));
}

void save_dataset(const std::filesystem::path& path, const Dataset& data) {
    auto out = open_out(path);
    write_dataset_csv(out, data);
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

Dataset load_dataset(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_dataset_csv(in);
}

void write_mask_csv(std::ostream& out, const ObservationMask& mask) {
    for (std::size_t j = 0; j < mask.cols(); ++j) out << (j ? "," : "") << 'm' << j;
    out << '\n';
    for (std::size_t i = 0; i < mask.rows(); ++i) {
        for (std::size_t j = 0; j < mask.cols(); ++j) out << (j ? "," : "") << (mask.observed(i, j) ? '1' : '0');
        out << '\n';
    }
}

ObservationMask read_mask_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("mask file is empty");
    const auto header = split_csv_line(strip_cr(line));
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] != "m" + std::to_string(j)) throw IoError("unexpected mask column '" + header[j] + "'");
    }
    const std::size_t cols = header.size();
    if (cols == 0) throw IoError("mask header has no columns");
    std::vector<std::vector<bool>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != cols) throw IoError("line " + std::to_string(line_no) + ": wrong mask width");
        std::vector<bool> row;
        for (const auto& f : fields) {
            if (f != "0" && f != "1") throw IoError("line " + std::to_string(line_no) + ": mask values must be 0 or 1");
            row.push_back(f == "1");
        }
        rows.push_back(std::move(row));
    }
    ObservationMask mask(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) mask.set_observed(i, j, rows[i][j]);
    }
    return mask;
}

void save_mask(const std::filesystem::path& path, const ObservationMask& mask) {
    auto out = open_out(path);
    write_mask_csv(out, mask);
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

ObservationMask load_mask(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_mask_csv(in);
}

std::string dataset_digest(const Dataset& data) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    auto feed = [&hash](std::uint64_t word) {
        for (int b = 0; b < 8; ++b) {
            hash ^= (word >> (8 * b)) & 0xffU;
            hash *= 0x100000001b3ULL;
        }
    };
    feed(data.size());
    feed(data.dims());
    for (double v : data.points().values()) feed(std::bit_cast<std::uint64_t>(v));
    if (data.has_labels()) {
        for (std::size_t label : data.labels()) feed(label);
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string_view to_string(Algorithm algo) noexcept { return algo == Algorithm::lloyd ? "lloyd" : "mm"; }

Algorithm parse_algorithm(std::string_view name) {
    if (name == "lloyd") return Algorithm::lloyd;
    if (name == "mm") return Algorithm::mm;
    throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

std::string_view display_name(Algorithm algo) noexcept {
    return algo == Algorithm::lloyd ? "K-means" : "MM K-means";
}

nlohmann::ordered_json to_json(const ResultFile& result) {
    nlohmann::ordered_json doc;
    doc["centroids"] = matrix_to_json(result.fit.model.centroids());
    doc["assignment"] = result.fit.assignment.cluster_of;
    auto trace = nlohmann::ordered_json::array();
    for (const auto& entry : result.fit.trace.iterations) {
        trace.push_back({{"n", entry.n}, {"movement", entry.movement}, {"objective", entry.objective}});
    }
    doc["trace"] = std::move(trace);
    doc["converged"] = result.fit.trace.converged;
    doc["elapsed_seconds"] = result.fit.trace.elapsed_seconds;
    doc["seed"] = result.config.seed;
    nlohmann::ordered_json config;
    config["algo"] = to_string(result.algo);
    config["k"] = result.config.k;
    config["epsilon"] = result.config.epsilon;
    config["max_iter"] = result.config.max_iter;
    config["missing"] = result.missing;
    config["dataset"] = result.dataset_path;
    config["dataset_name"] = result.dataset_name;
    config["dataset_digest"] = result.dataset_digest;
    config["mask"] = result.mask_path ? nlohmann::ordered_json(*result.mask_path) : nlohmann::ordered_json(nullptr);
    doc["config"] = std::move(config);
    return doc;
}

ResultFile result_from_json(const nlohmann::ordered_json& doc) {
    try {
        ResultFile result;
        const auto& config = doc.at("config");
        result.algo = parse_algorithm(config.at("algo").get<std::string>());
        result.config.k = config.at("k").get<std::size_t>();
        result.config.epsilon = config.at("epsilon").get<double>();
        result.config.max_iter = config.at("max_iter").get<std::size_t>();
        result.config.seed = doc.at("seed").get<std::uint64_t>();
        result.missing = config.at("missing").get<double>();
        result.dataset_path = config.at("dataset").get<std::string>();
        result.dataset_name = config.at("dataset_name").get<std::string>();
        result.dataset_digest = config.at("dataset_digest").get<std::string>();
        if (config.contains("mask") && !config.at("mask").is_null()) {
            result.mask_path = config.at("mask").get<std::string>();
        }
        result.fit.model = ClusterModel(matrix_from_json(doc.at("centroids")));
        result.fit.assignment.cluster_of = doc.at("assignment").get<std::vector<std::size_t>>();
        for (const auto& entry : doc.at("trace")) {
            TraceEntry te;
            te.n = entry.at("n").get<std::size_t>();
            te.movement = entry.at("movement").get<double>();
            te.objective = entry.at("objective").get<double>();
            result.fit.trace.iterations.push_back(std::move(te));
        }
        result.fit.trace.converged = doc.at("converged").get<bool>();
        result.fit.trace.elapsed_seconds = doc.at("elapsed_seconds").get<double>();
        if (result.fit.model.k() != result.config.k) throw IoError("centroid count differs from config.k");
        return result;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed result file: ") + e.what());
    }
}

void save_result(const std::filesystem::path& path, const ResultFile& result) {
    auto out = open_out(path);
    out << to_json(result).dump(2) << '\n';
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

ResultFile load_result(const std::filesystem::path& path) {
    auto in = open_in(path);
    nlohmann::ordered_json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
    return result_from_json(doc);
}

std::filesystem::path resolve_relative(const std::filesystem::path& referencing_file, const std::string& stored) {
    const std::filesystem::path p(stored);
    if (p.is_absolute()) return p;
    return referencing_file.parent_path() / p;
}

}  // namespace mmkmeans::harness
