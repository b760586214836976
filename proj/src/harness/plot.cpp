#include "mmkmeans/harness/plot.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "mmkmeans/errors.hpp"

namespace mmkmeans::harness {

namespace {

constexpr std::array<const char*, 10> kPalette{"#377eb8", "#ff7f00", "#4daf4a", "#f781bf", "#a65628",
                                               "#984ea3", "#999999", "#e41a1c", "#dede00", "#17becf"};

void require_planar(const Dataset& data, std::span<const std::size_t> labels) {
    if (data.dims() != 2) {
        throw UnsupportedPlotError("scatter plots need 2-D data, got d=" + std::to_string(data.dims()));
    }
    if (labels.size() != data.size()) throw DimensionError("plot needs one label per sample");
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void write_points_csv(std::ostream& out, const Dataset& data, std::span<const std::size_t> labels,
                      const ObservationMask* mask) {
    require_planar(data, labels);
    if (mask) check_mask_shape(data.points(), *mask);
    out << "x,y,assigned_cluster,any_missing_flag\n";
    char buf[64];
    for (std::size_t i = 0; i < data.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g", data.points()(i, 0), data.points()(i, 1));
        out << buf << ',' << labels[i] << ',' << (mask && mask->any_missing(i) ? 1 : 0) << '\n';
    }
}

std::string render_scatter_svg(const Dataset& data, std::span<const std::size_t> labels,
                               const ObservationMask* mask, const ClusterModel& model, const std::string& title) {
    require_planar(data, labels);
    if (mask) check_mask_shape(data.points(), *mask);
    if (model.dims() != 2) throw UnsupportedPlotError("centroids must be 2-D");

    constexpr double kSize = 480.0;
    constexpr double kMargin = 24.0;
    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
    double lo_y = lo_x, hi_y = -lo_x;
    auto widen = [&](double x, double y) {
        lo_x = std::min(lo_x, x);
        hi_x = std::max(hi_x, x);
        lo_y = std::min(lo_y, y);
        hi_y = std::max(hi_y, y);
    };
    for (std::size_t i = 0; i < data.size(); ++i) widen(data.points()(i, 0), data.points()(i, 1));
    for (std::size_t c = 0; c < model.k(); ++c) widen(model.centroids()(c, 0), model.centroids()(c, 1));
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
    const double scale = (kSize - 2.0 * kMargin) / span;
    auto px = [&](double x) { return kMargin + (x - lo_x) * scale; };
    // SVG y grows downward.
    auto py = [&](double y) { return kSize - kMargin - (y - lo_y) * scale; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
        << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty()) {
        svg << "<text x=\"" << kMargin << "\" y=\"16\" font-family=\"sans-serif\" font-size=\"12\">"
            << xml_escape(title) << "</text>\n";
    }
    svg << "<g class=\"points\">\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        svg << "<circle class=\"point\" cx=\"" << num(px(data.points()(i, 0))) << "\" cy=\""
            << num(py(data.points()(i, 1))) << "\" r=\"2.5\" fill=\"" << kPalette[labels[i] % kPalette.size()]
            << "\"/>\n";
    }
    svg << "</g>\n";
    if (mask) {
        svg << "<g class=\"missing\">\n";
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (!mask->any_missing(i)) continue;
            svg << "<circle class=\"missing-ring\" cx=\"" << num(px(data.points()(i, 0))) << "\" cy=\""
                << num(py(data.points()(i, 1))) << "\" r=\"4.5\" fill=\"none\" stroke=\"black\" stroke-width=\"0.8\"/>\n";
        }
        svg << "</g>\n";
    }
    svg << "<g class=\"centroids\">\n";
    for (std::size_t c = 0; c < model.k(); ++c) {
        svg << "<circle class=\"centroid\" cx=\"" << num(px(model.centroids()(c, 0))) << "\" cy=\""
            << num(py(model.centroids()(c, 1))) << "\" r=\"5\" fill=\"black\"/>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

}  // namespace mmkmeans::harness
