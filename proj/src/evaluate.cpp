#include "tsad/evaluate.hpp"

#include <algorithm>
#include <numeric>

#include "tsad/errors.hpp"
#include "tsad/format.hpp"

namespace tsad {

ConfusionCounts confusion(const AnomalyReport& report, std::span<const std::uint8_t> labels) {
    if (report.flags.size() != labels.size())
        throw LengthMismatch("report has " + std::to_string(report.flags.size()) +
                             " flags, labels have " + std::to_string(labels.size()));
    ConfusionCounts c;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const bool flagged = report.flags[i] != 0;
        const bool positive = labels[i] != 0;
        if (flagged && positive)
            ++c.tp;
        else if (flagged && !positive)
            ++c.fp;
        else if (!flagged && positive)
            ++c.fn;
        else
            ++c.tn;
    }
    return c;
}

namespace {

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

EvalMetrics metrics(const ConfusionCounts& c) {
    EvalMetrics m;
    m.precision = safe_ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fp));
    m.recall = safe_ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fn));
    m.f1 = safe_ratio(2.0 * m.precision * m.recall, m.precision + m.recall);
    m.accuracy =
        safe_ratio(static_cast<double>(c.tp + c.tn), static_cast<double>(c.total()));
    return m;
}

void FaultPolicy::validate() const {
    if (interval_seconds <= 0) throw ConfigError("fault interval must be positive");
    if (min_events < 1) throw ConfigError("min_events must be >= 1");
}

std::vector<FaultInterval> fault_flag(const TimeSeries& series, const AnomalyReport& report,
                                      const FaultPolicy& policy) {
    policy.validate();
    if (series.size() != report.flags.size())
        throw LengthMismatch("series and report are not aligned");

    std::vector<Timestamp> hits;
    for (std::size_t i = 0; i < series.size(); ++i)
        if (report.flags[i]) hits.push_back(series.timestamps[i]);

    std::vector<FaultInterval> intervals;
    const std::size_t m = policy.min_events;
    if (hits.size() < m) return intervals;

    for (std::size_t i = 0; i + m - 1 < hits.size(); ++i) {
        const Timestamp start = hits[i];
        const Timestamp end = hits[i + m - 1];
        if (end - start > policy.interval_seconds) continue;
        if (!intervals.empty() && start <= intervals.back().end) {
            intervals.back().end = std::max(intervals.back().end, end);
        } else {
            intervals.push_back({start, end, 0});
        }
    }
    // Count the flagged points inside each coalesced interval.
    std::size_t h = 0;
    for (auto& iv : intervals) {
        while (h < hits.size() && hits[h] < iv.start) ++h;
        std::size_t j = h;
        while (j < hits.size() && hits[j] <= iv.end) ++j;
        iv.count = j - h;
        h = j;
    }
    return intervals;
}

WindowFrequency window_frequency(const TimeSeries& series, const AnomalyReport& report,
                                 std::int64_t bin_seconds, Timestamp window_start,
                                 Timestamp window_end) {
    if (bin_seconds <= 0) throw ConfigError("bin width must be positive");
    if (window_end < window_start) throw ConfigError("window end precedes window start");
    if (series.size() != report.flags.size())
        throw LengthMismatch("series and report are not aligned");
    if (series.empty()) throw EmptyRegion("empty series");

    WindowFrequency wf;
    wf.bin_origin = series.timestamps.front();
    wf.bin_seconds = bin_seconds;
    const Timestamp span = series.timestamps.back() - wf.bin_origin;
    wf.bin_counts.assign(static_cast<std::size_t>(span / bin_seconds) + 1, 0);

    std::size_t in_points = 0, out_points = 0, in_flags = 0, out_flags = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const Timestamp ts = series.timestamps[i];
        const bool flagged = report.flags[i] != 0;
        if (flagged) ++wf.bin_counts[static_cast<std::size_t>((ts - wf.bin_origin) / bin_seconds)];
        if (ts >= window_start && ts <= window_end) {
            ++in_points;
            in_flags += flagged;
        } else {
            ++out_points;
            out_flags += flagged;
        }
    }
    if (in_points == 0) throw EmptyRegion("no points inside the window");
    if (out_points == 0) throw EmptyRegion("no points outside the window");
    wf.in_rate = static_cast<double>(in_flags) / static_cast<double>(in_points);
    wf.out_rate = static_cast<double>(out_flags) / static_cast<double>(out_points);
    return wf;
}

AnomalyReport ensemble_combine(std::span<const AnomalyReport> reports, VoteStrategy strategy,
                               std::span<const double> weights) {
    if (reports.empty()) throw EmptyEnsemble();
    const std::size_t n = reports.front().size();
    for (const auto& r : reports)
        if (r.size() != n) throw LengthMismatch("ensemble members are not aligned");

    std::vector<double> w;
    if (strategy == VoteStrategy::weighted) {
        if (weights.size() != reports.size())
            throw LengthMismatch("need one weight per report, got " +
                                 std::to_string(weights.size()) + " for " +
                                 std::to_string(reports.size()));
        w.assign(weights.begin(), weights.end());
    } else {
        w.assign(reports.size(), 1.0);
    }
    double total = 0.0;
    for (double x : w) {
        if (!(x > 0.0)) throw NonpositiveWeights("ensemble weights must be positive");
        total += x;
    }

    AnomalyReport out;
    out.detector = strategy == VoteStrategy::majority ? "ensemble-majority" : "ensemble-weighted";
    out.config_echo = "detector=" + out.detector + " members=";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i) out.config_echo += ',';
        out.config_echo += reports[i].detector;
    }
    if (strategy == VoteStrategy::weighted) {
        out.config_echo += " weights=";
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) out.config_echo += ',';
            out.config_echo += format_double(w[i]);
        }
    }
    out.flags.assign(n, 0);
    out.scores.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double voted = 0.0;
        for (std::size_t r = 0; r < reports.size(); ++r)
            if (reports[r].flags[i]) voted += w[r];
        out.scores[i] = voted / total;
        out.flags[i] = voted > 0.5 * total ? 1 : 0;
    }
    return out;
}

}  // namespace tsad
