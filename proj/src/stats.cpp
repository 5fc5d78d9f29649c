#include "tsad/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tsad/errors.hpp"

namespace tsad {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

bool Decomposition::trend_defined(std::size_t i) const {
    return i < trend.size() && !std::isnan(trend[i]);
}

Decomposition decompose(std::span<const double> values, std::size_t period) {
    if (period < 1) throw ConfigError("period must be positive");
    const std::size_t n = values.size();
    if (n < 2 * period)
        throw SeriesTooShort("need at least 2*period = " + std::to_string(2 * period) +
                             " points, got " + std::to_string(n));

    Decomposition d;
    d.period = period;
    d.trend.assign(n, kNaN);
    d.seasonal.assign(n, 0.0);
    d.residual.assign(n, kNaN);

    const std::size_t half = period / 2;
    if (period % 2 == 0) {
        // 2x(period) window with half weights at both ends; the rolling sum
        // covers the fully weighted interior [i-half+1, i+half-1].
        double interior = 0.0;
        for (std::size_t j = 1; j < period; ++j) interior += values[j];
        for (std::size_t i = half; i + half < n; ++i) {
            d.trend[i] = (interior + 0.5 * (values[i - half] + values[i + half])) /
                         static_cast<double>(period);
            if (i + half + 1 < n) interior += values[i + half] - values[i - half + 1];
        }
    } else {
        double window = 0.0;
        for (std::size_t j = 0; j < period; ++j) window += values[j];
        for (std::size_t i = half; i + half < n; ++i) {
            d.trend[i] = window / static_cast<double>(period);
            if (i + half + 1 < n) window += values[i + half + 1] - values[i - half];
        }
    }

    // Per-phase mean of the detrended series, then re-centered to zero.
    std::vector<double> phase_sum(period, 0.0);
    std::vector<std::size_t> phase_count(period, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!d.trend_defined(i)) continue;
        phase_sum[i % period] += values[i] - d.trend[i];
        ++phase_count[i % period];
    }
    std::vector<double> profile(period, 0.0);
    for (std::size_t p = 0; p < period; ++p)
        if (phase_count[p] > 0) profile[p] = phase_sum[p] / static_cast<double>(phase_count[p]);
    const double profile_mean = mean_of(profile);
    for (auto& v : profile) v -= profile_mean;

    for (std::size_t i = 0; i < n; ++i) {
        d.seasonal[i] = profile[i % period];
        if (d.trend_defined(i)) d.residual[i] = values[i] - d.trend[i] - d.seasonal[i];
    }
    return d;
}

Decomposition decompose(const TimeSeries& series, std::size_t period) {
    return decompose(std::span<const double>(series.values), period);
}

double GaussianModel::stddev() const { return std::sqrt(variance); }

GaussianModel fit_gaussian(std::span<const double> values) {
    if (values.size() < 2)
        throw TooFewSamples("gaussian fit needs at least 2 values, got " +
                            std::to_string(values.size()));
    GaussianModel m;
    m.n = values.size();
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (*lo == *hi) {
        // Exactly constant input: report it as such instead of leaking
        // summation noise into the variance.
        m.mean = *lo;
        m.variance = 0.0;
        return m;
    }
    m.mean = mean_of(values);
    double ss = 0.0;
    for (double v : values) {
        const double d = v - m.mean;
        ss += d * d;
    }
    m.variance = ss / static_cast<double>(m.n);
    return m;
}

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw LengthMismatch("sequences differ in length: " + std::to_string(x.size()) +
                             " vs " + std::to_string(y.size()));
    if (x.size() < 2) throw TooFewSamples("correlation needs at least 2 pairs");
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    const double mx = mean_of(x);
    const double my = mean_of(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw ConstantInput("constant sequence has no correlation");
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based block mean
        for (std::size_t p = i; p <= j; ++p) ranks[order[p]] = avg;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    return pearson(rx, ry);
}

namespace {

// Counts inversions of v (strict decreases over pairs) by merge sort.
std::uint64_t count_inversions(std::vector<double>& v) {
    const std::size_t n = v.size();
    if (n < 2) return 0;
    std::vector<double> buf(n);
    std::uint64_t inversions = 0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
            const std::size_t mid = lo + width;
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t a = lo, b = mid, o = lo;
            while (a < mid && b < hi) {
                if (v[b] < v[a]) {
                    inversions += mid - a;
                    buf[o++] = v[b++];
                } else {
                    buf[o++] = v[a++];
                }
            }
            while (a < mid) buf[o++] = v[a++];
            while (b < hi) buf[o++] = v[b++];
            std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
                      buf.begin() + static_cast<std::ptrdiff_t>(hi),
                      v.begin() + static_cast<std::ptrdiff_t>(lo));
        }
    }
    return inversions;
}

std::uint64_t tie_pairs(std::span<const double> sorted_keys) {
    std::uint64_t total = 0;
    std::size_t i = 0;
    while (i < sorted_keys.size()) {
        std::size_t j = i;
        while (j + 1 < sorted_keys.size() && sorted_keys[j + 1] == sorted_keys[i]) ++j;
        const std::uint64_t run = j - i + 1;
        total += run * (run - 1) / 2;
        i = j + 1;
    }
    return total;
}

}  // namespace

double kendall(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    const std::size_t n = x.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return y[a] < y[b];
    });

    // Tie bookkeeping: pairs tied in x (n1), in y (n2), in both (n3).
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = x[order[i]];
        ys[i] = y[order[i]];
    }
    const std::uint64_t n1 = tie_pairs(xs);
    std::uint64_t n3 = 0;
    {
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && xs[j + 1] == xs[i] && ys[j + 1] == ys[i]) ++j;
            const std::uint64_t run = j - i + 1;
            n3 += run * (run - 1) / 2;
            i = j + 1;
        }
    }
    std::vector<double> y_sorted = ys;
    std::sort(y_sorted.begin(), y_sorted.end());
    const std::uint64_t n2 = tie_pairs(y_sorted);

    // With (x, y) sorted ascending, every strict y-inversion is a discordant
    // pair; x-tied pairs contribute none because their y runs ascend.
    const std::uint64_t discordant = count_inversions(ys);

    const std::uint64_t n0 = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (n0 == n1 || n0 == n2)
        throw Undefined("tau-b denominator vanishes (an input is entirely tied)");

    const double concordant_minus_discordant =
        static_cast<double>(n0 - n1 - n2 + n3) - 2.0 * static_cast<double>(discordant);
    return concordant_minus_discordant /
           std::sqrt(static_cast<double>(n0 - n1) * static_cast<double>(n0 - n2));
}

}  // namespace tsad
