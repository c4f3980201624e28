#include "vqs/reports.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace vqs {

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string format_short(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

struct Bounds {
    double lo = 0.0;
    double hi = 1.0;
};

Bounds bounds_of(const std::vector<const std::vector<double>*>& columns) {
    Bounds b{1e300, -1e300};
    for (const auto* col : columns)
        for (double v : *col) {
            b.lo = std::min(b.lo, v);
            b.hi = std::max(b.hi, v);
        }
    if (b.lo > b.hi) return {0.0, 1.0};
    if (b.hi - b.lo < 1e-12) {
        b.lo -= 0.5;
        b.hi += 0.5;
    }
    return b;
}

constexpr int kWidth = 800;
constexpr int kHeight = 500;
constexpr int kMargin = 60;

double map_x(double v, const Bounds& b) {
    return kMargin + (v - b.lo) / (b.hi - b.lo) * (kWidth - 2 * kMargin);
}
double map_y(double v, const Bounds& b) {
    return kHeight - kMargin - (v - b.lo) / (b.hi - b.lo) * (kHeight - 2 * kMargin);
}

const char* kSeriesColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};

std::string svg_header(const std::string& title) {
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) + "\" height=\"" +
           std::to_string(kHeight) + "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " + std::to_string(kHeight) +
           "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + std::to_string(kWidth / 2) + "\" y=\"28\" text-anchor=\"middle\" font-size=\"18\" "
           "font-family=\"sans-serif\">" + title + "</text>\n";
    return svg;
}

std::string svg_axes(const Bounds& bx, const Bounds& by, const std::string& x_label, const std::string& y_label) {
    std::string svg;
    svg += "<line x1=\"" + std::to_string(kMargin) + "\" y1=\"" + std::to_string(kHeight - kMargin) + "\" x2=\"" +
           std::to_string(kWidth - kMargin) + "\" y2=\"" + std::to_string(kHeight - kMargin) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + std::to_string(kMargin) + "\" y1=\"" + std::to_string(kMargin) + "\" x2=\"" +
           std::to_string(kMargin) + "\" y2=\"" + std::to_string(kHeight - kMargin) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + std::to_string(kWidth / 2) + "\" y=\"" + std::to_string(kHeight - 16) +
           "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" + x_label + "</text>\n";
    svg += "<text x=\"18\" y=\"" + std::to_string(kHeight / 2) +
           "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" transform=\"rotate(-90 18 " +
           std::to_string(kHeight / 2) + ")\">" + y_label + "</text>\n";
    // Corner tick labels are enough for a diagnostic plot.
    svg += "<text x=\"" + std::to_string(kMargin) + "\" y=\"" + std::to_string(kHeight - kMargin + 18) +
           "\" font-size=\"11\" font-family=\"sans-serif\">" + format_short(bx.lo) + "</text>\n";
    svg += "<text x=\"" + std::to_string(kWidth - kMargin) + "\" y=\"" + std::to_string(kHeight - kMargin + 18) +
           "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" + format_short(bx.hi) + "</text>\n";
    svg += "<text x=\"" + std::to_string(kMargin - 6) + "\" y=\"" + std::to_string(kHeight - kMargin) +
           "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" + format_short(by.lo) + "</text>\n";
    svg += "<text x=\"" + std::to_string(kMargin - 6) + "\" y=\"" + std::to_string(kMargin + 4) +
           "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" + format_short(by.hi) + "</text>\n";
    return svg;
}

}  // namespace

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_line_plot_svg(const std::string& path, const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<PlotSeries>& series) {
    std::vector<const std::vector<double>*> xs, ys;
    for (const auto& s : series) {
        xs.push_back(&s.x);
        ys.push_back(&s.y);
    }
    const Bounds bx = bounds_of(xs);
    const Bounds by = bounds_of(ys);

    std::string svg = svg_header(title);
    svg += svg_axes(bx, by, x_label, y_label);
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const char* color = kSeriesColors[i % std::size(kSeriesColors)];
        svg += "<polyline fill=\"none\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t j = 0; j < s.x.size(); ++j) {
            svg += format_short(map_x(s.x[j], bx)) + "," + format_short(map_y(s.y[j], by));
            if (j + 1 < s.x.size()) svg += ' ';
        }
        svg += "\"/>\n";
        svg += "<text x=\"" + std::to_string(kWidth - kMargin - 4) + "\" y=\"" +
               std::to_string(kMargin + 16 * (static_cast<int>(i) + 1)) +
               "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\" fill=\"" + color + "\">" +
               s.name + "</text>\n";
    }
    svg += "</svg>\n";
    write_file(path, svg);
}

void write_scatter_svg(const std::string& path, const std::string& title,
                       const std::vector<std::array<double, 3>>& points) {
    std::vector<double> xs, ys;
    for (const auto& p : points) {
        xs.push_back(p[0]);
        ys.push_back(p[1]);
    }
    const Bounds bx = bounds_of({&xs});
    const Bounds by = bounds_of({&ys});

    std::string svg = svg_header(title);
    svg += svg_axes(bx, by, "x1", "x2");
    for (const auto& p : points) {
        const char* color = p[2] < 0.5 ? "#e6b800" : "#6a3d9a";
        svg += "<circle cx=\"" + format_short(map_x(p[0], bx)) + "\" cy=\"" + format_short(map_y(p[1], by)) +
               "\" r=\"3\" fill=\"" + color + "\"/>\n";
    }
    svg += "</svg>\n";
    write_file(path, svg);
}

void emit_reports(const TrainRun& run, const XorDataset& dataset, const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory: " + out_dir);
    const auto path = [&](const char* name) { return (std::filesystem::path(out_dir) / name).string(); };

    const std::size_t batches = run.history.size();
    std::vector<double> batch_axis(batches);
    for (std::size_t b = 0; b < batches; ++b) batch_axis[b] = static_cast<double>(b + 1);

    // loss.csv
    {
        std::string csv = "batch,loss\n";
        for (std::size_t b = 0; b < batches; ++b)
            csv += std::to_string(b + 1) + "," + format_double(run.history[b].loss) + "\n";
        write_file(path("loss.csv"), csv);
        std::vector<double> loss(batches);
        for (std::size_t b = 0; b < batches; ++b) loss[b] = run.history[b].loss;
        write_line_plot_svg(path("loss.svg"), "Training loss", "batch", "loss", {{"loss", batch_axis, loss}});
    }

    // val_accuracy.csv
    {
        std::string csv = "batch,accuracy\n";
        for (std::size_t b = 0; b < batches; ++b)
            csv += std::to_string(b + 1) + "," + format_double(run.history[b].val_accuracy) + "\n";
        write_file(path("val_accuracy.csv"), csv);
        std::vector<double> acc(batches);
        for (std::size_t b = 0; b < batches; ++b) acc[b] = run.history[b].val_accuracy;
        write_line_plot_svg(path("val_accuracy.svg"), "Validation accuracy", "batch", "accuracy",
                            {{"accuracy", batch_axis, acc}});
    }

    // params.csv: initial row plus one row per batch; the original variant
    // reports its tied alpha in both alpha columns.
    {
        auto param_row = [&](const std::vector<double>& p) {
            const double a2 = run.variant == XorVariant::Original ? p[2] : p[3];
            return format_double(p[0]) + "," + format_double(p[1]) + "," + format_double(p[2]) + "," +
                   format_double(a2);
        };
        std::string csv = "batch,theta1,theta2,alpha1,alpha2\n";
        csv += "0," + param_row(run.initial_params) + "\n";
        for (std::size_t b = 0; b < batches; ++b)
            csv += std::to_string(b + 1) + "," + param_row(run.history[b].params) + "\n";
        write_file(path("params.csv"), csv);

        std::vector<PlotSeries> series(4);
        const char* names[4] = {"theta1", "theta2", "alpha1", "alpha2"};
        std::vector<double> axis(batches + 1);
        for (std::size_t b = 0; b <= batches; ++b) axis[b] = static_cast<double>(b);
        for (int p = 0; p < 4; ++p) {
            series[static_cast<std::size_t>(p)].name = names[p];
            series[static_cast<std::size_t>(p)].x = axis;
        }
        auto push_params = [&](const std::vector<double>& pv) {
            const double a2 = run.variant == XorVariant::Original ? pv[2] : pv[3];
            series[0].y.push_back(pv[0]);
            series[1].y.push_back(pv[1]);
            series[2].y.push_back(pv[2]);
            series[3].y.push_back(a2);
        };
        push_params(run.initial_params);
        for (std::size_t b = 0; b < batches; ++b) push_params(run.history[b].params);
        write_line_plot_svg(path("params.svg"), "Parameter trajectory", "batch", "radians", series);
    }

    // test_report.csv
    {
        std::string csv = "x1,x2,true,predicted\n";
        std::vector<std::array<double, 3>> predicted_points;
        for (const XorSample& s : dataset.test) {
            const int predicted = classify(run.final_model, s.x1, s.x2);
            csv += format_double(s.x1) + "," + format_double(s.x2) + "," + std::to_string(s.label) + "," +
                   std::to_string(predicted) + "\n";
            predicted_points.push_back({s.x1, s.x2, static_cast<double>(predicted)});
        }
        write_file(path("test_report.csv"), csv);
        write_scatter_svg(path("test_report.svg"), "Test predictions", predicted_points);
    }
}

}  // namespace vqs
