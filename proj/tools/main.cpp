#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "tsad/errors.hpp"

using namespace tsad::cli;

int main(int argc, char** argv) {
    CLI::App app{"Sensor time-series anomaly detection toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 0;
    std::string global_output;
    std::string global_config;
    app.add_option("--seed", seed, "Seed for every randomized stage")->capture_default_str();
    app.add_option("--output", global_output, "Output path (default: stdout)");
    app.add_option("--config", global_config, "Configuration file (pipeline)");

    CleanOpts clean_opts;
    auto* clean = app.add_subcommand("clean", "Parse, filter and DST-repair a sensor CSV");
    clean->add_option("--input", clean_opts.input, "Raw sensor CSV")->required();
    std::string clean_sensor, clean_report;
    clean->add_option("--sensor", clean_sensor, "Keep only this sensor_id");
    clean->add_option("--report", clean_report, "Write the cleaning report here ('-' = stdout)");
    clean->add_option("--magnitude-cutoff", clean_opts.magnitude_cutoff,
                      "Drop |value| above this")->capture_default_str();
    clean->add_flag("--keep-negative", clean_opts.keep_negative, "Keep negative values");
    clean->add_flag("--keep-nonfinite", clean_opts.keep_nonfinite, "Keep NaN/inf values");

    DecomposeOpts dec_opts;
    auto* dec = app.add_subcommand("decompose", "Trend/seasonal/residual decomposition");
    dec->add_option("--input", dec_opts.input, "Cleaned sensor CSV")->required();
    std::string dec_sensor;
    dec->add_option("--sensor", dec_sensor, "Keep only this sensor_id");
    dec->add_option("--period", dec_opts.period, "Samples per season")->capture_default_str();

    CorrelateOpts cor_opts;
    auto* cor = app.add_subcommand("correlate", "Pearson/Spearman/Kendall of two series");
    cor->add_option("--input-x", cor_opts.input_x, "First sensor CSV")->required();
    cor->add_option("--input-y", cor_opts.input_y, "Second sensor CSV")->required();
    std::string cor_sx, cor_sy;
    cor->add_option("--sensor-x", cor_sx, "sensor_id filter for the first file");
    cor->add_option("--sensor-y", cor_sy, "sensor_id filter for the second file");

    InjectOpts inj_opts;
    auto* inj = app.add_subcommand("inject", "Plant synthetic anomalies with labels");
    inj->add_option("--input", inj_opts.input, "Cleaned sensor CSV")->required();
    std::string inj_sensor;
    inj->add_option("--sensor", inj_sensor, "Keep only this sensor_id");
    inj->add_option("--rate", inj_opts.rate, "Fraction of points to alter")
        ->capture_default_str();
    inj->add_option("--offset-min", inj_opts.offset_min, "Minimum |offset|")
        ->capture_default_str();
    inj->add_option("--offset-max", inj_opts.offset_max, "Maximum |offset|")
        ->capture_default_str();

    DetectOpts det_opts;
    auto* det = app.add_subcommand("detect", "Run one detector and write its report");
    det->add_option("--input", det_opts.input, "Cleaned sensor CSV")->required();
    det->add_option("--algo", det_opts.algo,
                    "baseline|lowhigh-offline|lowhigh-online|gaussian|sesd|ldcof|ensemble")
        ->capture_default_str();
    std::string det_sensor, det_labels, det_train, det_oxygen, det_model_out, det_model_in;
    det->add_option("--sensor", det_sensor, "Keep only this sensor_id");
    det->add_option("--labels", det_labels, "Labeled CSV: also print metrics");
    det->add_option("--window", det_opts.params.window,
                    "Filter window (default: offline 5, online 20)");
    det->add_option("--alpha", det_opts.params.alpha,
                    "Filter alpha (default: offline 1.0, online 0.2)");
    det->add_option("--eps", det_opts.params.eps, "Gaussian tail-probability threshold")
        ->capture_default_str();
    det->add_option("--gaussian-window", det_opts.params.gaussian_window,
                    "Gaussian window size (0 = per point)");
    det->add_option("--train", det_train, "Training series CSV (gaussian, ldcof)");
    det->add_option("--max-outliers", det_opts.params.max_outliers,
                    "S-ESD outlier bound k (0 = 1% of the series)");
    det->add_option("--significance", det_opts.params.significance, "S-ESD significance")
        ->capture_default_str();
    det->add_option("--period", det_opts.params.period, "S-ESD season length")
        ->capture_default_str();
    det->add_option("--clusters", det_opts.params.clusters, "LDCOF cluster count")
        ->capture_default_str();
    det->add_option("--ldcof-alpha", det_opts.params.ldcof_alpha, "LDCOF cumulative-mass bound")
        ->capture_default_str();
    det->add_option("--ldcof-beta", det_opts.params.ldcof_beta, "LDCOF size-drop bound")
        ->capture_default_str();
    det->add_option("--threshold", det_opts.params.threshold,
                    "LDCOF score threshold ('auto' = mean+std of member ratios)")
        ->capture_default_str();
    det->add_option("--temporal", det_opts.params.temporal, "none|month|season|weekday")
        ->capture_default_str();
    det->add_option("--oxygen", det_oxygen, "Second feature series CSV (ldcof)");
    det->add_option("--model-out", det_model_out, "Export the trained LDCOF model");
    det->add_option("--model-in", det_model_in, "Score with a previously exported model");
    det->add_option("--members", det_opts.params.members, "Ensemble member list")
        ->capture_default_str();
    det->add_option("--strategy", det_opts.params.strategy, "majority|weighted")
        ->capture_default_str();
    det->add_option("--weights", det_opts.params.weights, "Ensemble weights (weighted)");

    EvaluateOpts eval_opts;
    auto* eva = app.add_subcommand("evaluate", "Score a report against labels");
    eva->add_option("--report", eval_opts.report, "Report CSV from detect")->required();
    eva->add_option("--labels", eval_opts.labels, "Labeled CSV")->required();
    std::string eval_fault_out, eval_freq_out;
    eva->add_option("--fault-output", eval_fault_out, "Write fault intervals CSV here");
    eva->add_option("--fault-interval-minutes", eval_opts.fault_interval_minutes,
                    "Fault window length")->capture_default_str();
    eva->add_option("--fault-min-events", eval_opts.fault_min_events,
                    "Anomalies within the window to declare a fault")->capture_default_str();
    eva->add_option("--frequency-output", eval_freq_out, "Write the per-bin frequency CSV here");
    eva->add_option("--window-start", eval_opts.window_start, "Labelled window start");
    eva->add_option("--window-end", eval_opts.window_end, "Labelled window end");
    eva->add_option("--bin-minutes", eval_opts.bin_minutes, "Frequency bin width")
        ->capture_default_str();

    PipelineOpts pipe_opts;
    auto* pipe = app.add_subcommand("pipeline",
                                    "clean -> inject -> all detectors -> comparison table");
    int pipe_threads = 0;
    pipe->add_option("--threads", pipe_threads, "Run detectors in parallel when > 1");

    PlotOpts plot_opts;
    auto* plot = app.add_subcommand("plot-data", "Emit plot-ready CSV (and optional SVG)");
    plot->add_option("--kind", plot_opts.kind, "series|decomposition|histogram|report-overlay")
        ->capture_default_str();
    plot->add_option("--input", plot_opts.input, "Input series CSV")->required();
    std::string plot_report, plot_svg, plot_sensor;
    plot->add_option("--report", plot_report, "Report CSV (report-overlay)");
    plot->add_option("--sensor", plot_sensor, "Keep only this sensor_id");
    plot->add_option("--svg", plot_svg, "Also render a minimal SVG here");
    plot->add_option("--round-digits", plot_opts.round_digits,
                     "Histogram rounding (0 = integers)")->capture_default_str();
    plot->add_option("--period", plot_opts.period, "Decomposition period")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "configuration error: " << e.what() << "\n\n" << app.help() << std::endl;
        return 3;
    }

    auto opt_str = [](const std::string& s) {
        return s.empty() ? std::optional<std::string>{} : std::optional<std::string>{s};
    };

    try {
        if (*clean) {
            clean_opts.output = global_output;
            clean_opts.sensor = opt_str(clean_sensor);
            clean_opts.report_path = opt_str(clean_report);
            return cmd_clean(clean_opts);
        }
        if (*dec) {
            dec_opts.output = global_output;
            dec_opts.sensor = opt_str(dec_sensor);
            return cmd_decompose(dec_opts);
        }
        if (*cor) {
            cor_opts.sensor_x = opt_str(cor_sx);
            cor_opts.sensor_y = opt_str(cor_sy);
            cor_opts.output = opt_str(global_output);
            return cmd_correlate(cor_opts);
        }
        if (*inj) {
            inj_opts.output = global_output;
            inj_opts.sensor = opt_str(inj_sensor);
            inj_opts.seed = seed;
            return cmd_inject(inj_opts);
        }
        if (*det) {
            det_opts.output = global_output;
            det_opts.sensor = opt_str(det_sensor);
            det_opts.labels = opt_str(det_labels);
            det_opts.params.seed = seed;
            det_opts.params.train = opt_str(det_train);
            det_opts.params.oxygen = opt_str(det_oxygen);
            det_opts.params.model_out = opt_str(det_model_out);
            det_opts.params.model_in = opt_str(det_model_in);
            return cmd_detect(det_opts);
        }
        if (*eva) {
            eval_opts.output = opt_str(global_output);
            eval_opts.fault_output = opt_str(eval_fault_out);
            eval_opts.frequency_output = opt_str(eval_freq_out);
            return cmd_evaluate(eval_opts);
        }
        if (*pipe) {
            if (global_config.empty())
                throw tsad::ConfigError("pipeline needs --config <file>");
            pipe_opts.config_path = global_config;
            pipe_opts.output = opt_str(global_output);
            if (pipe_threads > 0) pipe_opts.threads = pipe_threads;
            return cmd_pipeline(pipe_opts);
        }
        if (*plot) {
            plot_opts.output = global_output;
            plot_opts.report = opt_str(plot_report);
            plot_opts.sensor = opt_str(plot_sensor);
            plot_opts.svg = opt_str(plot_svg);
            return cmd_plotdata(plot_opts);
        }
    } catch (const tsad::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << std::endl;
        return 3;
    } catch (const tsad::InputError& e) {
        std::cerr << "input error: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}
