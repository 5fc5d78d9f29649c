#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsad/series.hpp"

namespace tsad {

/// Threshold noise filter settings. The defaults drop NaN/inf readings,
/// negative concentrations and junk magnitudes; 1e6 sits far above any
/// plausible concentration while still catching garbage-order values.
struct CleaningConfig {
    double magnitude_cutoff = 1e6;
    bool drop_negative = true;
    bool drop_nonfinite = true;

    void validate() const;
};

struct CleaningReport {
    std::size_t removed_nan = 0;
    std::size_t removed_negative = 0;
    std::size_t removed_magnitude = 0;
    std::size_t condensed_pairs = 0;

    std::size_t total_removed() const {
        return removed_nan + removed_negative + removed_magnitude;
    }

    /// Four `key=value` lines, one per counter.
    std::string to_text() const;
};

/// Parses `timestamp,sensor_id,value` CSV. Rows for other sensors are
/// skipped when expected_sensor is given. Throws MalformedRow (with the
/// 1-based line number) on an unparsable field, EmptyInput when no data
/// row survives.
std::vector<SensorReading> parse_sensor_csv(std::istream& source,
                                            const std::optional<std::string>& expected_sensor = {});

/// Readings -> series, preserving file order. The readings must all carry
/// the same sensor_id (pre-filter with expected_sensor otherwise).
TimeSeries to_series(const std::vector<SensorReading>& readings);

/// Drops NaN/negative/over-magnitude points, counting each removal by the
/// first matching cause. Order preserved; never adds points.
std::pair<TimeSeries, CleaningReport> clean(const TimeSeries& series,
                                            const CleaningConfig& cfg = {});

/// Repairs the clock set-back hour: each maximal run of points whose
/// timestamps fold back over earlier ones is condensed, together with the
/// earlier points it duplicates, by averaging consecutive pairs. The
/// condensed points get consecutive per-minute timestamps starting at the
/// span's first timestamp, so the result is strictly increasing. Throws
/// OddSpan when a duplicated span has odd length.
std::pair<TimeSeries, CleaningReport> condense_dst(const TimeSeries& series);

}  // namespace tsad
