#include "tsad/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

#include "tsad/errors.hpp"

namespace tsad {

void CleaningConfig::validate() const {
    if (!(magnitude_cutoff > 0))
        throw ConfigError("magnitude_cutoff must be positive");
}

std::string CleaningReport::to_text() const {
    std::ostringstream out;
    out << "removed_nan=" << removed_nan << '\n'
        << "removed_negative=" << removed_negative << '\n'
        << "removed_magnitude=" << removed_magnitude << '\n'
        << "condensed_pairs=" << condensed_pairs << '\n';
    return out.str();
}

namespace {

constexpr const char* kHeader = "timestamp,sensor_id,value";

void rstrip_cr(std::string& line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
}

bool parse_value(std::string_view field, double& out) {
    if (field.empty()) return false;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

}  // namespace

std::vector<SensorReading> parse_sensor_csv(std::istream& source,
                                            const std::optional<std::string>& expected_sensor) {
    std::vector<SensorReading> readings;
    std::string line;
    std::size_t lineno = 0;
    bool saw_header = false;

    while (std::getline(source, line)) {
        ++lineno;
        rstrip_cr(line);
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != kHeader)
                throw MalformedRow(lineno, "expected header '" + std::string(kHeader) + "'");
            saw_header = true;
            continue;
        }

        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos ||
            line.find(',', c2 + 1) != std::string::npos)
            throw MalformedRow(lineno, "expected 3 comma-separated fields");

        SensorReading r;
        const auto ts = parse_timestamp(std::string_view(line).substr(0, c1));
        if (!ts) throw MalformedRow(lineno, "bad timestamp '" + line.substr(0, c1) + "'");
        r.timestamp = *ts;
        r.sensor_id = line.substr(c1 + 1, c2 - c1 - 1);
        if (r.sensor_id.empty()) throw MalformedRow(lineno, "empty sensor_id");
        if (!parse_value(std::string_view(line).substr(c2 + 1), r.value))
            throw MalformedRow(lineno, "bad value '" + line.substr(c2 + 1) + "'");

        if (expected_sensor && r.sensor_id != *expected_sensor) continue;
        readings.push_back(std::move(r));
    }
    if (readings.empty()) throw EmptyInput();
    return readings;
}

TimeSeries to_series(const std::vector<SensorReading>& readings) {
    TimeSeries s;
    if (readings.empty()) return s;
    s.sensor_id = readings.front().sensor_id;
    s.timestamps.reserve(readings.size());
    s.values.reserve(readings.size());
    for (const auto& r : readings) {
        if (r.sensor_id != s.sensor_id)
            throw InputError("mixed sensors in one series ('" + s.sensor_id + "' vs '" +
                             r.sensor_id + "'); filter with expected_sensor");
        s.push_back(r.timestamp, r.value);
    }
    return s;
}

std::pair<TimeSeries, CleaningReport> clean(const TimeSeries& series, const CleaningConfig& cfg) {
    cfg.validate();
    TimeSeries out;
    out.sensor_id = series.sensor_id;
    CleaningReport report;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double v = series.values[i];
        if (cfg.drop_nonfinite && !std::isfinite(v)) {
            ++report.removed_nan;
            continue;
        }
        if (cfg.drop_negative && v < 0) {
            ++report.removed_negative;
            continue;
        }
        if (std::abs(v) > cfg.magnitude_cutoff) {
            ++report.removed_magnitude;
            continue;
        }
        out.push_back(series.timestamps[i], v);
    }
    return {std::move(out), report};
}

std::pair<TimeSeries, CleaningReport> condense_dst(const TimeSeries& series) {
    const auto& ts = series.timestamps;
    const auto& vals = series.values;
    const std::size_t n = series.size();

    TimeSeries out;
    out.sensor_id = series.sensor_id;
    out.timestamps.reserve(n);
    out.values.reserve(n);
    CleaningReport report;

    std::size_t i = 0;
    while (i < n) {
        // Advance past the strictly increasing stretch; j is the first index
        // whose timestamp folds back onto something already seen.
        std::size_t j = i + 1;
        Timestamp runmax = ts[i];
        while (j < n && ts[j] > runmax) runmax = ts[j++];
        if (j >= n) {
            for (std::size_t p = i; p < n; ++p) out.push_back(ts[p], vals[p]);
            break;
        }

        // The fold-back run [j, k], and the earliest duplicated timestamp in it.
        std::size_t k = j;
        Timestamp span_min = ts[j];
        while (k + 1 < n && ts[k + 1] <= runmax) span_min = std::min(span_min, ts[++k]);

        // Extend backwards over the first occurrences being duplicated.
        std::size_t b = j;
        while (b > i && ts[b - 1] >= span_min) --b;

        for (std::size_t p = i; p < b; ++p) out.push_back(ts[p], vals[p]);

        const std::size_t span_len = k - b + 1;
        if (span_len % 2 != 0)
            throw OddSpan("duplicated span of " + std::to_string(span_len) +
                          " points starting at " + format_timestamp(ts[b]) +
                          " has odd length");
        for (std::size_t p = 0; p < span_len / 2; ++p) {
            const double avg = 0.5 * (vals[b + 2 * p] + vals[b + 2 * p + 1]);
            out.push_back(ts[b] + 60 * static_cast<Timestamp>(p), avg);
        }
        report.condensed_pairs += span_len / 2;
        i = k + 1;
    }

    if (!out.strictly_increasing())
        throw InputError("timestamps still not strictly increasing after DST condensation");
    return {std::move(out), report};
}

}  // namespace tsad
