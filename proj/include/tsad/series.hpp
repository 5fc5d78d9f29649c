#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tsad/timeutil.hpp"

namespace tsad {

/// One CSV row: a timestamped reading of a named sensor.
struct SensorReading {
    Timestamp timestamp = 0;
    std::string sensor_id;
    double value = 0.0;
};

/// The pipeline currency: parallel timestamp/value arrays for one sensor.
/// After ingestion (clean + condense_dst) timestamps are strictly
/// increasing and values finite; mid-pipeline the DST duplicates may still
/// be present.
struct TimeSeries {
    std::string sensor_id;
    std::vector<Timestamp> timestamps;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }

    std::span<const double> value_span() const { return values; }

    void push_back(Timestamp ts, double v) {
        timestamps.push_back(ts);
        values.push_back(v);
    }

    bool strictly_increasing() const {
        for (std::size_t i = 1; i < timestamps.size(); ++i)
            if (timestamps[i] <= timestamps[i - 1]) return false;
        return true;
    }
};

}  // namespace tsad
