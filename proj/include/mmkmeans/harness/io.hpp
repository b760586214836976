#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "mmkmeans/lloyd.hpp"
#include "mmkmeans/types.hpp"

namespace mmkmeans::harness {

// Dataset CSV: header x0,...,x{d-1}[,label], one sample per row, values
// printed with 17 significant digits so they load back bit-exact.
// Mask CSV: header m0,...,m{d-1}, 1 = observed, 0 = unobserved.

void write_dataset_csv(std::ostream& out, const Dataset& data);
Dataset read_dataset_csv(std::istream& in);
void save_dataset(const std::filesystem::path& path, const Dataset& data);
Dataset load_dataset(const std::filesystem::path& path);

void write_mask_csv(std::ostream& out, const ObservationMask& mask);
ObservationMask read_mask_csv(std::istream& in);
void save_mask(const std::filesystem::path& path, const ObservationMask& mask);
ObservationMask load_mask(const std::filesystem::path& path);

/// FNV-1a over the sample values' bit patterns and the labels, as 16 hex digits.
std::string dataset_digest(const Dataset& data);

enum class Algorithm { lloyd, mm };

std::string_view to_string(Algorithm algo) noexcept;
/// Throws ConfigError for anything but "lloyd" or "mm".
Algorithm parse_algorithm(std::string_view name);
/// Row label used in reports: "K-means" or "MM K-means".
std::string_view display_name(Algorithm algo) noexcept;

/// Contents of a `run` result file.
struct ResultFile {
    Algorithm algo = Algorithm::mm;
    RunConfig config;
    double missing = 0.0;
    /// Paths are stored relative to the result file's directory when possible.
    std::string dataset_path;
    std::string dataset_name;
    std::string dataset_digest;
    std::optional<std::string> mask_path;
    LloydResult fit;
};

/// Fields: centroids, assignment, trace [{n, movement, objective}], converged,
/// elapsed_seconds, seed, config {algo, k, epsilon, max_iter, missing,
/// dataset, dataset_name, dataset_digest, mask}.
nlohmann::ordered_json to_json(const ResultFile& result);
ResultFile result_from_json(const nlohmann::ordered_json& doc);

void save_result(const std::filesystem::path& path, const ResultFile& result);
ResultFile load_result(const std::filesystem::path& path);

/// A stored path resolved against the directory of the file that references it.
std::filesystem::path resolve_relative(const std::filesystem::path& referencing_file, const std::string& stored);

}  // namespace mmkmeans::harness
