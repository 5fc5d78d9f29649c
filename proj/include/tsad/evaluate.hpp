#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tsad/detectors.hpp"
#include "tsad/series.hpp"

namespace tsad {

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    std::size_t total() const { return tp + fp + fn + tn; }
};

/// All four rates in [0, 1]; any 0/0 is defined as 0 so degenerate
/// detectors still evaluate.
struct EvalMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double accuracy = 0.0;
};

ConfusionCounts confusion(const AnomalyReport& report, std::span<const std::uint8_t> labels);
EvalMetrics metrics(const ConfusionCounts& c);

/// Fault rule parameters: flag an interval when at least min_events
/// anomalies fall within interval_seconds of each other.
struct FaultPolicy {
    std::int64_t interval_seconds = 3600;
    std::size_t min_events = 1;

    void validate() const;
};

struct FaultInterval {
    Timestamp start = 0;
    Timestamp end = 0;
    std::size_t count = 0;  // flagged points inside [start, end]
};

/// Every run of min_events consecutive flagged points spanning at most
/// interval_seconds triggers; overlapping or touching trigger spans are
/// coalesced into maximal disjoint fault intervals.
std::vector<FaultInterval> fault_flag(const TimeSeries& series, const AnomalyReport& report,
                                      const FaultPolicy& policy);

struct WindowFrequency {
    double in_rate = 0.0;   // flags per point inside the window
    double out_rate = 0.0;  // flags per point outside
    std::vector<std::size_t> bin_counts;  // flags per bin over the whole span
    Timestamp bin_origin = 0;
    std::int64_t bin_seconds = 0;
};

/// Anomaly-frequency profile: flags are bucketed into fixed-width bins
/// tiling the series span, and per-point flag rates are computed inside vs
/// outside [window_start, window_end]. Throws EmptyRegion when either
/// region contains no points.
WindowFrequency window_frequency(const TimeSeries& series, const AnomalyReport& report,
                                 std::int64_t bin_seconds, Timestamp window_start,
                                 Timestamp window_end);

enum class VoteStrategy { majority, weighted };

/// Majority: flag when strictly more than half of the reports flag.
/// Weighted: flag when the flagged weight exceeds half the total weight.
/// Scores are the weighted vote fractions either way.
AnomalyReport ensemble_combine(std::span<const AnomalyReport> reports, VoteStrategy strategy,
                               std::span<const double> weights = {});

}  // namespace tsad
