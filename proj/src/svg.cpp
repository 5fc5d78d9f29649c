#include "tsad/svg.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "tsad/format.hpp"

namespace tsad {

void write_series_svg(std::ostream& out, std::span<const double> values,
                      std::span<const std::uint8_t> flags, int width, int height) {
    const std::size_t n = values.size();
    double lo = 0.0, hi = 1.0;
    if (n > 0) {
        lo = *std::min_element(values.begin(), values.end());
        hi = *std::max_element(values.begin(), values.end());
        if (hi <= lo) hi = lo + 1.0;
    }
    const double margin = 10.0;
    const double plot_w = width - 2 * margin;
    const double plot_h = height - 2 * margin;
    auto px = [&](std::size_t i) {
        return margin + (n > 1 ? plot_w * static_cast<double>(i) / static_cast<double>(n - 1)
                               : plot_w * 0.5);
    };
    auto py = [&](double v) { return margin + plot_h * (1.0 - (v - lo) / (hi - lo)); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < n; ++i) {
        if (i) out << ' ';
        out << format_double(std::round(px(i) * 100.0) / 100.0) << ','
            << format_double(std::round(py(values[i]) * 100.0) / 100.0);
    }
    out << "\"/>\n";
    for (std::size_t i = 0; i < n && i < flags.size(); ++i) {
        if (!flags[i]) continue;
        out << "<circle cx=\"" << format_double(std::round(px(i) * 100.0) / 100.0) << "\" cy=\""
            << format_double(std::round(py(values[i]) * 100.0) / 100.0)
            << "\" r=\"3\" fill=\"orange\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace tsad
