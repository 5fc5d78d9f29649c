#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tsad/series.hpp"

namespace tsad {

/// Additive decomposition: value = trend + seasonal + residual wherever the
/// trend is defined. Trend and residual hold NaN for the half-window at
/// either edge where the centered moving average does not exist.
struct Decomposition {
    std::vector<double> trend;
    std::vector<double> seasonal;
    std::vector<double> residual;
    std::size_t period = 0;

    std::size_t size() const { return seasonal.size(); }
    bool trend_defined(std::size_t i) const;
};

/// Classical moving-average decomposition. Trend is the centered moving
/// average over one period (half-weight endpoints when the period is even),
/// the seasonal profile is the per-phase mean of the detrended series
/// re-centered to zero and tiled, the residual is what remains. Throws
/// SeriesTooShort when fewer than two full periods are available.
Decomposition decompose(std::span<const double> values, std::size_t period);
Decomposition decompose(const TimeSeries& series, std::size_t period = 1440);

struct GaussianModel {
    double mean = 0.0;
    double variance = 0.0;  // population variance (divisor n)
    std::size_t n = 0;

    bool zero_variance() const { return variance <= 0.0; }
    double stddev() const;
};

/// MLE fit: arithmetic mean and population variance. Throws TooFewSamples
/// below two values; a constant input yields a model with the
/// zero-variance flag set, which the detectors refuse.
GaussianModel fit_gaussian(std::span<const double> values);

/// Product-moment correlation. Throws LengthMismatch, TooFewSamples (<2),
/// ConstantInput when either side has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// Pearson correlation of the two average-rank vectors.
double spearman(std::span<const double> x, std::span<const double> y);

/// Kendall's tau-b with the standard tie corrections, computed in
/// O(n log n) via merge-sort inversion counting. Throws Undefined when a
/// denominator factor vanishes (one side entirely tied).
double kendall(std::span<const double> x, std::span<const double> y);

/// Average ranks (1-based; ties share the mean of their rank block).
std::vector<double> average_ranks(std::span<const double> values);

}  // namespace tsad
