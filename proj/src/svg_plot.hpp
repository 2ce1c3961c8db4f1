#pragma once

#include <string>
#include <vector>

namespace vqremap {

// One curve on a learning-curve chart: mean per epoch, optional std band.
struct CurveSeries {
    std::string label;
    std::string color;
    bool dashed = false;
    std::vector<double> mean;
    std::vector<double> stddev; // empty for single runs
};

// Self-contained SVG markup (no external renderer): y fixed to [0, 1].
std::string learning_curve_svg(const std::string& title, const std::string& y_label,
                               const std::vector<CurveSeries>& series);

} // namespace vqremap
