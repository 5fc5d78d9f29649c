#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tsad {

/// Seconds since the Unix epoch. Sensor data is minute-resolution, but we
/// keep full second precision so round-trips are exact.
using Timestamp = std::int64_t;

/// Parses `YYYY-MM-DD HH:MM:SS`. Returns nullopt on any format or range
/// violation (month 13, Feb 30, minute 61, trailing junk, ...).
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// Inverse of parse_timestamp.
std::string format_timestamp(Timestamp ts);

int month_of(Timestamp ts);    // 1..12
int season_of(Timestamp ts);   // 0..3; Dec-Feb = 0, Mar-May = 1, Jun-Aug = 2, Sep-Nov = 3
int weekday_of(Timestamp ts);  // 0..6; Monday = 0

}  // namespace tsad
