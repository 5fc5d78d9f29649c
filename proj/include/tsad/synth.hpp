#pragma once

#include <cstdint>
#include <vector>

#include "tsad/series.hpp"

namespace tsad {

/// Synthetic-anomaly protocol: alter round(rate*N) uniformly sampled points
/// by a random offset whose magnitude is uniform in [offset_min,
/// offset_max] with a fair random sign. Offsets below offset_min are
/// excluded by construction (too subtle to be worth testing against).
struct InjectionConfig {
    double rate = 0.01;
    double offset_min = 1.0;
    double offset_max = 4.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct LabeledSeries {
    TimeSeries series;
    std::vector<std::uint8_t> labels;  // 1 = injected anomaly

    std::size_t positive_count() const;
};

/// Deterministic given the seed: indices via partial Fisher-Yates over
/// SplitMix64, then per selected index (in selection order) one uniform
/// magnitude draw followed by one sign draw. Non-selected points are
/// bit-identical to the input.
LabeledSeries inject(const TimeSeries& series, const InjectionConfig& cfg);

}  // namespace tsad
