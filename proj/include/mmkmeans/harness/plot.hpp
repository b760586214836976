#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>

#include "mmkmeans/types.hpp"

namespace mmkmeans::harness {

/// Columns x,y,assigned_cluster,any_missing_flag. A null mask flags nothing.
/// Throws UnsupportedPlotError unless d == 2.
void write_points_csv(std::ostream& out, const Dataset& data, std::span<const std::size_t> labels,
                      const ObservationMask* mask);

/// Static SVG scatter: points filled by cluster, points with any missing
/// coordinate ringed in black, centroids drawn as black dots (class "centroid").
std::string render_scatter_svg(const Dataset& data, std::span<const std::size_t> labels,
                               const ObservationMask* mask, const ClusterModel& model,
                               const std::string& title = {});

}  // namespace mmkmeans::harness
