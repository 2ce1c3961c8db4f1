#include "svg_plot.hpp"

#include <algorithm>
#include <sstream>

#include "error.hpp"
#include "textio.hpp"

namespace vqremap {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 220.0; // room for the legend
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

double plot_w() { return kWidth - kLeft - kRight; }
double plot_h() { return kHeight - kTop - kBottom; }

double x_pos(std::size_t epoch, std::size_t n_epochs) {
    if (n_epochs <= 1) return kLeft;
    return kLeft + plot_w() * static_cast<double>(epoch) / static_cast<double>(n_epochs - 1);
}

double y_pos(double value) {
    const double v = std::clamp(value, 0.0, 1.0);
    return kTop + plot_h() * (1.0 - v);
}

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

} // namespace

std::string learning_curve_svg(const std::string& title, const std::string& y_label,
                               const std::vector<CurveSeries>& series) {
    if (series.empty() || series.front().mean.empty()) {
        throw Error(ErrorCode::Usage, "cli-runner", "nothing to plot");
    }
    const std::size_t n_epochs = series.front().mean.size();

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kLeft + plot_w() / 2 << "\" y=\"28\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">"
        << title << "</text>\n";

    // grid and y ticks at 0.0 .. 1.0
    for (int i = 0; i <= 5; ++i) {
        const double v = 0.2 * i;
        const double y = y_pos(v);
        svg << "<line x1=\"" << kLeft << "\" y1=\"" << coord(y) << "\" x2=\""
            << kLeft + plot_w() << "\" y2=\"" << coord(y)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << coord(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
            << coord(v) << "</text>\n";
    }
    // x ticks: at most 10 epoch marks
    const std::size_t tick_step = std::max<std::size_t>(1, (n_epochs - 1) / 10 + 1);
    for (std::size_t e = 0; e < n_epochs; e += tick_step) {
        const double x = x_pos(e, n_epochs);
        svg << "<line x1=\"" << coord(x) << "\" y1=\"" << kTop + plot_h() << "\" x2=\""
            << coord(x) << "\" y2=\"" << kTop + plot_h() + 5
            << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << coord(x) << "\" y=\"" << kTop + plot_h() + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << e
            << "</text>\n";
    }
    svg << "<text x=\"" << kLeft + plot_w() / 2 << "\" y=\"" << kHeight - 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">epoch"
        << "</text>\n";
    svg << "<text x=\"20\" y=\"" << kTop + plot_h() / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 20 "
        << kTop + plot_h() / 2 << ")\">" << y_label << "</text>\n";
    svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w()
        << "\" height=\"" << plot_h()
        << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";

    // std bands first so the lines draw on top
    for (const auto& s : series) {
        if (s.stddev.empty()) continue;
        svg << "<polygon fill=\"" << s.color << "\" fill-opacity=\"0.12\" stroke=\"none\" "
               "points=\"";
        for (std::size_t e = 0; e < n_epochs; ++e) {
            svg << coord(x_pos(e, n_epochs)) << "," << coord(y_pos(s.mean[e] + s.stddev[e]))
                << " ";
        }
        for (std::size_t e = n_epochs; e-- > 0;) {
            svg << coord(x_pos(e, n_epochs)) << "," << coord(y_pos(s.mean[e] - s.stddev[e]))
                << " ";
        }
        svg << "\"/>\n";
    }

    for (const auto& s : series) {
        svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.8\"";
        if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
        svg << " points=\"";
        for (std::size_t e = 0; e < n_epochs; ++e) {
            svg << coord(x_pos(e, n_epochs)) << "," << coord(y_pos(s.mean[e])) << " ";
        }
        svg << "\"/>\n";
    }

    // legend
    double legend_y = kTop + 10;
    for (const auto& s : series) {
        const double lx = kLeft + plot_w() + 18;
        svg << "<line x1=\"" << lx << "\" y1=\"" << coord(legend_y - 4) << "\" x2=\""
            << lx + 26 << "\" y2=\"" << coord(legend_y - 4) << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"";
        if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
        svg << "/>\n";
        svg << "<text x=\"" << lx + 32 << "\" y=\"" << coord(legend_y)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
        legend_y += 18;
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace vqremap
