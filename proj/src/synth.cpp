#include "tsad/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tsad/errors.hpp"
#include "tsad/rng.hpp"

namespace tsad {

void InjectionConfig::validate() const {
    if (!(rate >= 0.0)) throw ConfigError("rate must be >= 0");
    if (!(offset_min > 0.0)) throw ConfigError("offset_min must be positive");
    if (!(offset_min < offset_max)) throw ConfigError("offset_min must be below offset_max");
}

std::size_t LabeledSeries::positive_count() const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), std::uint8_t{1}));
}

LabeledSeries inject(const TimeSeries& series, const InjectionConfig& cfg) {
    cfg.validate();
    const std::size_t n = series.size();
    if (n == 0) throw EmptyInput("cannot inject into an empty series");

    const auto count = static_cast<std::size_t>(
        std::llround(cfg.rate * static_cast<double>(n)));
    if (count > n)
        throw RateTooHigh("rate " + std::to_string(cfg.rate) + " asks for " +
                          std::to_string(count) + " anomalies in " + std::to_string(n) +
                          " points");

    LabeledSeries out;
    out.series = series;
    out.labels.assign(n, 0);

    SplitMix64 rng(cfg.seed);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.bounded(n - i));
        std::swap(idx[i], idx[j]);
    }
    for (std::size_t i = 0; i < count; ++i) {
        const double magnitude =
            cfg.offset_min + rng.uniform01() * (cfg.offset_max - cfg.offset_min);
        const double delta = rng.sign() * magnitude;
        out.series.values[idx[i]] += delta;
        out.labels[idx[i]] = 1;
    }
    return out;
}

}  // namespace tsad
