#include "tsad/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "tsad/errors.hpp"
#include "tsad/format.hpp"

namespace tsad {

namespace {

void rstrip_cr(std::string& line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_double_field(const std::string& field, std::size_t lineno) {
    double v = 0.0;
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), last, v);
    if (ec != std::errc() || ptr != last)
        throw MalformedRow(lineno, "bad numeric field '" + field + "'");
    return v;
}

Timestamp parse_ts_field(const std::string& field, std::size_t lineno) {
    const auto ts = parse_timestamp(field);
    if (!ts) throw MalformedRow(lineno, "bad timestamp '" + field + "'");
    return *ts;
}

}  // namespace

void write_series_csv(std::ostream& out, const TimeSeries& series) {
    out << "timestamp,sensor_id,value\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        out << format_timestamp(series.timestamps[i]) << ',' << series.sensor_id << ','
            << format_double(series.values[i]) << '\n';
}

void write_report_csv(std::ostream& out, const TimeSeries& series, const AnomalyReport& report,
                      const std::map<std::string, std::string>& header) {
    if (series.size() != report.size())
        throw LengthMismatch("series and report are not aligned");
    out << "# " << report.config_echo << '\n';
    for (const auto& [key, value] : header) out << "# " << key << '=' << value << '\n';
    out << "timestamp,value,score,flag,detector\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        out << format_timestamp(series.timestamps[i]) << ',' << format_double(series.values[i])
            << ',' << format_double(report.scores[i]) << ',' << int(report.flags[i]) << ','
            << report.detector << '\n';
}

ReportFile read_report_csv(std::istream& in) {
    ReportFile rf;
    std::string line;
    std::size_t lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        rstrip_cr(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto echo = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
            if (rf.report.config_echo.empty()) rf.report.config_echo = echo;
            continue;
        }
        if (!saw_header) {
            if (line != "timestamp,value,score,flag,detector")
                throw MalformedRow(lineno, "expected report header");
            saw_header = true;
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 5) throw MalformedRow(lineno, "expected 5 fields");
        rf.series.push_back(parse_ts_field(fields[0], lineno),
                            parse_double_field(fields[1], lineno));
        rf.report.scores.push_back(parse_double_field(fields[2], lineno));
        if (fields[3] != "0" && fields[3] != "1")
            throw MalformedRow(lineno, "flag must be 0 or 1");
        rf.report.flags.push_back(fields[3] == "1" ? 1 : 0);
        if (rf.report.detector.empty()) rf.report.detector = fields[4];
    }
    if (rf.report.flags.empty()) throw EmptyInput("report file has no rows");
    return rf;
}

void write_labeled_csv(std::ostream& out, const LabeledSeries& labeled) {
    out << "timestamp,value,label\n";
    for (std::size_t i = 0; i < labeled.series.size(); ++i)
        out << format_timestamp(labeled.series.timestamps[i]) << ','
            << format_double(labeled.series.values[i]) << ',' << int(labeled.labels[i]) << '\n';
}

LabeledSeries read_labeled_csv(std::istream& in) {
    LabeledSeries ls;
    std::string line;
    std::size_t lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        rstrip_cr(line);
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != "timestamp,value,label")
                throw MalformedRow(lineno, "expected labeled-series header");
            saw_header = true;
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 3) throw MalformedRow(lineno, "expected 3 fields");
        ls.series.push_back(parse_ts_field(fields[0], lineno),
                            parse_double_field(fields[1], lineno));
        if (fields[2] != "0" && fields[2] != "1")
            throw MalformedRow(lineno, "label must be 0 or 1");
        ls.labels.push_back(fields[2] == "1" ? 1 : 0);
    }
    if (ls.labels.empty()) throw EmptyInput("labeled file has no rows");
    return ls;
}

void write_decomposition_csv(std::ostream& out, std::span<const double> values,
                             const Decomposition& d) {
    out << "index,value,trend,seasonal,residual\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        out << i << ',' << format_double(values[i]) << ',';
        if (d.trend_defined(i)) out << format_double(d.trend[i]);
        out << ',' << format_double(d.seasonal[i]) << ',';
        if (d.trend_defined(i)) out << format_double(d.residual[i]);
        out << '\n';
    }
}

std::map<double, std::size_t> histogram(std::span<const double> values, int round_digits) {
    if (round_digits < 0) throw ConfigError("round_digits must be >= 0");
    const double scale = std::pow(10.0, round_digits);
    std::map<double, std::size_t> bins;
    for (double v : values) {
        if (std::isnan(v)) continue;
        ++bins[std::round(v * scale) / scale];
    }
    return bins;
}

void write_histogram_csv(std::ostream& out, const std::map<double, std::size_t>& bins,
                         std::size_t total) {
    out << "bin,count,density\n";
    for (const auto& [center, count] : bins)
        out << format_double(center) << ',' << count << ','
            << format_double(total > 0 ? static_cast<double>(count) / static_cast<double>(total)
                                       : 0.0)
            << '\n';
}

}  // namespace tsad
