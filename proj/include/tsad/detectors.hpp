#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsad/series.hpp"
#include "tsad/stats.hpp"

namespace tsad {

/// Per-point verdicts of one detector run. Flags and scores are aligned to
/// the scored series; config_echo renders the hyper-parameters so outputs
/// are self-describing and reproducible.
struct AnomalyReport {
    std::string detector;
    std::vector<std::uint8_t> flags;  // 0/1
    std::vector<double> scores;
    std::string config_echo;

    std::size_t size() const { return flags.size(); }
    std::size_t flag_count() const;
};

/// Naive reference detector: point i is anomalous when the integer part of
/// |x_i - x_{i-1}| exceeds 1. Score is the raw gap.
AnomalyReport baseline_detect(const TimeSeries& series);

struct FilterConfig {
    std::size_t window = 5;
    double alpha = 1.0;  // in (0, 1]

    void validate() const;
};

/// Offline low-high pass filter: the band is avg(window) +/- std(X) with
/// the standard deviation taken once over the whole series. The window
/// holds the most recent points including x_i and fills gradually, so the
/// first W-1 points are scored against a partial window. Flag when
/// alpha * x_i leaves the band; score is alpha * x_i - avg.
AnomalyReport lowhigh_offline(const TimeSeries& series, const FilterConfig& cfg);

/// Streaming variant of the low-high pass filter: same rule, but the
/// deviation is the std of the current window contents. O(1) state update
/// per value; one instance per stream, instances independent.
class OnlineLowHighFilter {
public:
    explicit OnlineLowHighFilter(const FilterConfig& cfg);

    /// Feeds one value; returns its flag. score() reports the last score.
    bool push(double value);
    double score() const { return last_score_; }
    std::size_t count() const { return total_; }

private:
    FilterConfig cfg_;
    std::vector<double> ring_;
    std::size_t head_ = 0;
    std::size_t filled_ = 0;
    std::size_t total_ = 0;
    double sum_ = 0.0;
    double sum_sq_ = 0.0;
    double last_score_ = 0.0;
};

/// Batch convenience wrapper that drains a whole series through
/// OnlineLowHighFilter.
AnomalyReport lowhigh_online(const TimeSeries& series, const FilterConfig& cfg);

/// Two-sided tail probability of z under the model:
/// P(|Z - mu| >= |z - mu|) in (0, 1]. Throws ZeroVarianceModel.
double gaussian_score(const GaussianModel& model, double z);

/// Point mode (window absent): flag where gaussian_score < eps.
/// Window mode: consecutive non-overlapping windows of the given size; a
/// window is flagged wholesale when the product of member scores < eps
/// (the final partial window is scored over its members).
AnomalyReport gaussian_detect(const GaussianModel& model, const TimeSeries& series, double eps,
                              std::optional<std::size_t> window = {});

struct EsdConfig {
    std::size_t max_outliers = 0;  // k; must be >= 1
    double significance = 0.05;
    std::size_t period = 1440;

    void validate(std::size_t series_length) const;
};

/// Generalized ESD test: returns the indices declared outliers, in removal
/// order (at most k of them). Mean/std are the sample statistics of the
/// points still standing at each round; critical values come from the
/// Student-t quantile.
std::vector<std::size_t> esd_test(std::span<const double> values, std::size_t k,
                                  double significance);

/// Seasonal ESD: residual = X - seasonal - median(trend), then esd_test on
/// the residual. Scores are the initial studentized residual distances.
AnomalyReport sesd_detect(const TimeSeries& series, const EsdConfig& cfg);

}  // namespace tsad
