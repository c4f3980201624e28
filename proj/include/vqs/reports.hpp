#pragma once

#include <string>
#include <vector>

#include "vqs/xor_model.hpp"

namespace vqs {

// Full-precision decimal formatting used for every CSV cell ('%.17g',
// '.' decimal point), so re-running with the same seed reproduces files
// byte for byte.
std::string format_double(double value);

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

// Minimal static SVG line plot (one polyline per series).
void write_line_plot_svg(const std::string& path, const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<PlotSeries>& series);

// Scatter of labelled 2D points, one marker class per label.
void write_scatter_svg(const std::string& path, const std::string& title,
                       const std::vector<std::array<double, 3>>& points /* x, y, label */);

// Writes loss.csv, val_accuracy.csv, params.csv, test_report.csv and one SVG
// plot per CSV into out_dir. Content is deterministic for a fixed seed.
void emit_reports(const TrainRun& run, const XorDataset& dataset, const std::string& out_dir);

}  // namespace vqs
