#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tsad/detectors.hpp"
#include "tsad/series.hpp"
#include "tsad/stats.hpp"
#include "tsad/synth.hpp"

namespace tsad {

/// `timestamp,sensor_id,value` (the ingest schema).
void write_series_csv(std::ostream& out, const TimeSeries& series);

/// `timestamp,value,score,flag,detector`, preceded by `# key=value` header
/// comments echoing the effective configuration.
void write_report_csv(std::ostream& out, const TimeSeries& series, const AnomalyReport& report,
                      const std::map<std::string, std::string>& header = {});

struct ReportFile {
    TimeSeries series;
    AnomalyReport report;
};
ReportFile read_report_csv(std::istream& in);

/// `timestamp,value,label` with label in {0, 1}.
void write_labeled_csv(std::ostream& out, const LabeledSeries& labeled);
LabeledSeries read_labeled_csv(std::istream& in);

/// `index,value,trend,seasonal,residual`; trend/residual cells are empty
/// where undefined.
void write_decomposition_csv(std::ostream& out, std::span<const double> values,
                             const Decomposition& d);

/// Histogram of values rounded to the given number of decimal digits
/// (0 = integers). Keys are the rounded bin centers.
std::map<double, std::size_t> histogram(std::span<const double> values, int round_digits);
void write_histogram_csv(std::ostream& out, const std::map<double, std::size_t>& bins,
                         std::size_t total);

}  // namespace tsad
