#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tsad::cli {

struct CleanOpts {
    std::string input;
    std::string output;
    std::optional<std::string> sensor;
    std::optional<std::string> report_path;  // "-" = stdout
    double magnitude_cutoff = 1e6;
    bool keep_negative = false;
    bool keep_nonfinite = false;
};

struct DecomposeOpts {
    std::string input;
    std::string output;
    std::optional<std::string> sensor;
    std::size_t period = 1440;
};

struct CorrelateOpts {
    std::string input_x;
    std::string input_y;
    std::optional<std::string> sensor_x;
    std::optional<std::string> sensor_y;
    std::optional<std::string> output;
};

struct InjectOpts {
    std::string input;
    std::string output;
    std::optional<std::string> sensor;
    double rate = 0.01;
    double offset_min = 1.0;
    double offset_max = 4.0;
    std::uint64_t seed = 0;
};

/// Everything any detector might need; each algorithm reads its slice.
/// Defaults are the best configurations reported for each method.
struct DetectParams {
    std::uint64_t seed = 0;
    // low-high pass filter (0 = per-mode default: offline W=5, online W=20)
    std::size_t window = 0;
    double alpha = 0.0;  // 0 = per-mode default: offline 1.0, online 0.2
    // gaussian predictor
    double eps = 0.08;
    std::size_t gaussian_window = 0;  // 0 = point mode
    std::optional<std::string> train;  // training series path
    // S-ESD
    std::size_t max_outliers = 0;  // 0 = auto: 1% of the series length
    double significance = 0.05;
    std::size_t period = 1440;
    // LDCOF
    std::size_t clusters = 12;
    double ldcof_alpha = 0.75;
    double ldcof_beta = 0.25;
    std::string threshold = "auto";
    std::string temporal = "month";
    std::optional<std::string> oxygen;     // second feature series path
    std::optional<std::string> model_out;  // export the trained model
    std::optional<std::string> model_in;   // score with a reloaded model
    // ensemble
    std::string members = "baseline,lowhigh-offline,lowhigh-online,gaussian,sesd,ldcof";
    std::string strategy = "majority";
    std::string weights;  // comma list, weighted strategy only
};

struct DetectOpts {
    std::string input;
    std::string output;
    std::string algo = "baseline";
    std::optional<std::string> sensor;
    std::optional<std::string> labels;  // triggers metrics emission
    DetectParams params;
};

struct EvaluateOpts {
    std::string report;
    std::string labels;
    std::optional<std::string> output;  // one-row metrics CSV
    // fault flagging
    std::optional<std::string> fault_output;
    double fault_interval_minutes = 60.0;
    std::size_t fault_min_events = 1;
    // window-frequency profile
    std::optional<std::string> frequency_output;
    std::string window_start;
    std::string window_end;
    double bin_minutes = 60.0;
};

struct PipelineOpts {
    std::string config_path;
    std::optional<std::string> output;
    std::optional<int> threads;
};

struct PlotOpts {
    std::string kind = "series";
    std::string input;
    std::string output;
    std::optional<std::string> report;  // report-overlay input
    std::optional<std::string> sensor;
    std::optional<std::string> svg;
    int round_digits = 0;
    std::size_t period = 1440;
};

int cmd_clean(const CleanOpts& opts);
int cmd_decompose(const DecomposeOpts& opts);
int cmd_correlate(const CorrelateOpts& opts);
int cmd_inject(const InjectOpts& opts);
int cmd_detect(const DetectOpts& opts);
int cmd_evaluate(const EvaluateOpts& opts);
int cmd_pipeline(const PipelineOpts& opts);
int cmd_plotdata(const PlotOpts& opts);

}  // namespace tsad::cli
