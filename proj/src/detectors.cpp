#include "tsad/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tsad/errors.hpp"
#include "tsad/format.hpp"
#include "tsad/student_t.hpp"

namespace tsad {

std::size_t AnomalyReport::flag_count() const {
    return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), std::uint8_t{1}));
}

AnomalyReport baseline_detect(const TimeSeries& series) {
    const std::size_t n = series.size();
    if (n < 2) throw SeriesTooShort("baseline detector needs at least 2 points");
    AnomalyReport r;
    r.detector = "baseline";
    r.config_echo = "detector=baseline";
    r.flags.assign(n, 0);
    r.scores.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        const double gap = std::abs(series.values[i] - series.values[i - 1]);
        r.scores[i] = gap;
        r.flags[i] = std::floor(gap) > 1.0 ? 1 : 0;
    }
    return r;
}

void FilterConfig::validate() const {
    if (window < 2) throw ConfigError("filter window must be >= 2");
    if (!(alpha > 0.0) || alpha > 1.0) throw ConfigError("alpha must be in (0, 1]");
}

namespace {

double population_std(std::span<const double> v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) {
        const double d = x - mean;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(v.size()));
}

std::string filter_echo(const FilterConfig& cfg, const char* mode) {
    return std::string("detector=lowhigh-") + mode + " window=" + std::to_string(cfg.window) +
           " alpha=" + format_double(cfg.alpha);
}

}  // namespace

AnomalyReport lowhigh_offline(const TimeSeries& series, const FilterConfig& cfg) {
    cfg.validate();
    const std::size_t n = series.size();
    if (n < cfg.window)
        throw SeriesTooShort("series shorter than the filter window");

    const double series_std = population_std(series.values);

    AnomalyReport r;
    r.detector = "lowhigh-offline";
    r.config_echo = filter_echo(cfg, "offline");
    r.flags.assign(n, 0);
    r.scores.assign(n, 0.0);

    // The window fills gradually and always contains x_i, as in the
    // pseudo-code (append first, then test).
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += series.values[i];
        if (i >= cfg.window) sum -= series.values[i - cfg.window];
        const std::size_t filled = std::min<std::size_t>(i + 1, cfg.window);
        const double avg = sum / static_cast<double>(filled);
        const double scaled = cfg.alpha * series.values[i];
        r.scores[i] = scaled - avg;
        if (scaled > avg + series_std || scaled < avg - series_std) r.flags[i] = 1;
    }
    return r;
}

OnlineLowHighFilter::OnlineLowHighFilter(const FilterConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    ring_.assign(cfg_.window, 0.0);
}

bool OnlineLowHighFilter::push(double value) {
    if (filled_ == cfg_.window) {
        const double old = ring_[head_];
        sum_ -= old;
        sum_sq_ -= old * old;
    } else {
        ++filled_;
    }
    ring_[head_] = value;
    head_ = (head_ + 1) % cfg_.window;
    sum_ += value;
    sum_sq_ += value * value;
    ++total_;

    const double m = static_cast<double>(filled_);
    const double avg = sum_ / m;
    const double var = std::max(0.0, sum_sq_ / m - avg * avg);
    const double window_std = std::sqrt(var);
    const double scaled = cfg_.alpha * value;
    last_score_ = scaled - avg;
    return scaled > avg + window_std || scaled < avg - window_std;
}

AnomalyReport lowhigh_online(const TimeSeries& series, const FilterConfig& cfg) {
    OnlineLowHighFilter filter(cfg);
    AnomalyReport r;
    r.detector = "lowhigh-online";
    r.config_echo = filter_echo(cfg, "online");
    r.flags.reserve(series.size());
    r.scores.reserve(series.size());
    for (double v : series.values) {
        r.flags.push_back(filter.push(v) ? 1 : 0);
        r.scores.push_back(filter.score());
    }
    return r;
}

double gaussian_score(const GaussianModel& model, double z) {
    if (model.zero_variance()) throw ZeroVarianceModel();
    return normal_two_sided_tail((z - model.mean) / model.stddev());
}

AnomalyReport gaussian_detect(const GaussianModel& model, const TimeSeries& series, double eps,
                              std::optional<std::size_t> window) {
    if (model.zero_variance()) throw ZeroVarianceModel();
    if (!(eps > 0.0) || !(eps < 1.0)) throw ConfigError("eps must be in (0, 1)");
    if (window && *window < 1) throw ConfigError("window must be positive");

    const std::size_t n = series.size();
    AnomalyReport r;
    r.detector = "gaussian";
    r.config_echo = "detector=gaussian eps=" + format_double(eps) +
                    " mu=" + format_double(model.mean) +
                    " sigma2=" + format_double(model.variance) +
                    (window ? " window=" + std::to_string(*window) : std::string(" mode=point"));
    r.flags.assign(n, 0);
    r.scores.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) r.scores[i] = gaussian_score(model, series.values[i]);

    if (!window) {
        for (std::size_t i = 0; i < n; ++i) r.flags[i] = r.scores[i] < eps ? 1 : 0;
        return r;
    }
    // Consecutive windows; the window probability is the product of the
    // member probabilities and a hit marks every member.
    for (std::size_t begin = 0; begin < n; begin += *window) {
        const std::size_t end = std::min(begin + *window, n);
        double product = 1.0;
        for (std::size_t i = begin; i < end; ++i) product *= r.scores[i];
        if (product < eps)
            for (std::size_t i = begin; i < end; ++i) r.flags[i] = 1;
    }
    return r;
}

void EsdConfig::validate(std::size_t series_length) const {
    if (max_outliers < 1) throw ConfigError("max_outliers must be >= 1");
    if (!(significance > 0.0) || !(significance < 1.0))
        throw ConfigError("significance must be in (0, 1)");
    if (period < 1) throw ConfigError("period must be positive");
    if (series_length > 0 && max_outliers >= (series_length + 1) / 2)
        throw ConfigError("max_outliers must be below half the series length");
}

std::vector<std::size_t> esd_test(std::span<const double> values, std::size_t k,
                                  double significance) {
    const std::size_t n = values.size();
    if (k < 1) throw ConfigError("max_outliers must be >= 1");
    if (!(significance > 0.0) || !(significance < 1.0))
        throw ConfigError("significance must be in (0, 1)");
    if (n < k + 2)
        throw TooFewSamples("ESD needs at least k+2 = " + std::to_string(k + 2) +
                            " values, got " + std::to_string(n));

    double sum = 0.0, sum_sq = 0.0;
    for (double v : values) {
        sum += v;
        sum_sq += v * v;
    }
    std::vector<std::uint8_t> removed(n, 0);
    std::vector<std::size_t> removal_order;
    removal_order.reserve(k);
    std::size_t declared = 0;

    std::size_t remaining = n;
    for (std::size_t j = 1; j <= k; ++j) {
        const double m = static_cast<double>(remaining);
        const double mean = sum / m;
        const double ss = std::max(0.0, sum_sq - sum * sum / m);
        const double sd = std::sqrt(ss / (m - 1.0));
        if (j == 1 && sd == 0.0) throw ZeroVariance("ESD input has zero variance");
        if (sd == 0.0) break;

        std::size_t arg = n;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (removed[i]) continue;
            const double dev = std::abs(values[i] - mean);
            if (dev > best) {
                best = dev;
                arg = i;
            }
        }
        const double big_r = best / sd;

        const double m_j = static_cast<double>(n - j + 1);
        const double dof = static_cast<double>(n - j - 1);
        const double p = 1.0 - significance / (2.0 * m_j);
        const double t = student_t_quantile(p, dof);
        const double lambda = static_cast<double>(n - j) * t /
                              std::sqrt((dof + t * t) * m_j);

        removed[arg] = 1;
        removal_order.push_back(arg);
        sum -= values[arg];
        sum_sq -= values[arg] * values[arg];
        --remaining;
        if (big_r > lambda) declared = j;
    }
    removal_order.resize(declared);
    return removal_order;
}

AnomalyReport sesd_detect(const TimeSeries& series, const EsdConfig& cfg) {
    const std::size_t n = series.size();
    cfg.validate(n);
    if (n < 2 * cfg.period)
        throw SeriesTooShort("S-ESD needs at least two full periods");

    const Decomposition d = decompose(series.values, cfg.period);

    std::vector<double> defined_trend;
    defined_trend.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        if (d.trend_defined(i)) defined_trend.push_back(d.trend[i]);
    std::sort(defined_trend.begin(), defined_trend.end());
    const std::size_t mid = defined_trend.size() / 2;
    const double trend_median = defined_trend.size() % 2 == 1
                                    ? defined_trend[mid]
                                    : 0.5 * (defined_trend[mid - 1] + defined_trend[mid]);

    std::vector<double> residual(n);
    for (std::size_t i = 0; i < n; ++i)
        residual[i] = series.values[i] - d.seasonal[i] - trend_median;

    const auto outliers = esd_test(residual, cfg.max_outliers, cfg.significance);

    AnomalyReport r;
    r.detector = "sesd";
    r.config_echo = "detector=sesd max_outliers=" + std::to_string(cfg.max_outliers) +
                    " significance=" + format_double(cfg.significance) +
                    " period=" + std::to_string(cfg.period);
    r.flags.assign(n, 0);
    for (std::size_t idx : outliers) r.flags[idx] = 1;

    const GaussianModel res_model = fit_gaussian(residual);
    const double sd = std::sqrt(res_model.variance * static_cast<double>(n) /
                                static_cast<double>(n - 1));
    r.scores.assign(n, 0.0);
    if (sd > 0.0)
        for (std::size_t i = 0; i < n; ++i)
            r.scores[i] = std::abs(residual[i] - res_model.mean) / sd;
    return r;
}

}  // namespace tsad
