#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>

namespace tsad {

/// Minimal line+markers rendering of a series: one polyline through the
/// points, circles on the flagged ones. Good enough to eyeball a detector
/// run; the CSV stays the canonical artifact.
void write_series_svg(std::ostream& out, std::span<const double> values,
                      std::span<const std::uint8_t> flags, int width = 960, int height = 320);

}  // namespace tsad
