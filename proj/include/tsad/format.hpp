#pragma once

#include <string>

namespace tsad {

/// Shortest decimal rendering that round-trips the exact double (via
/// std::to_chars). All CSV and header output goes through this so runs are
/// byte-reproducible.
std::string format_double(double v);

}  // namespace tsad
