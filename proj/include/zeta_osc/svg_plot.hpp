#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>

#include "zeta_osc/series_eval.hpp"

namespace zeta_osc {

struct PlotLabels {
    std::string title;
    std::string x_label;
    std::string y_label;
};

/// Standalone SVG: axes with tick labels and the data as <polyline>
/// elements. Non-finite points split the curve into separate polylines.
void write_svg_line_plot(std::span<const double> x, std::span<const double> y,
                         const PlotLabels& labels, std::ostream& out);

/// Standalone SVG scatter, one <circle> per finite point.
void write_svg_scatter(std::span<const std::pair<double, double>> points, const PlotLabels& labels,
                       std::ostream& out);

/// "x,re,im" rows of cos(y) for external 3D tooling.
void write_traj3d_csv(const SeriesGrid& series, std::ostream& out);

}  // namespace zeta_osc
