#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>

#include "tsad/cluster.hpp"
#include "tsad/config.hpp"
#include "tsad/csv.hpp"
#include "tsad/detectors.hpp"
#include "tsad/errors.hpp"
#include "tsad/evaluate.hpp"
#include "tsad/format.hpp"
#include "tsad/ingest.hpp"
#include "tsad/stats.hpp"
#include "tsad/svg.hpp"
#include "tsad/synth.hpp"

namespace tsad::cli {

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file '" + path + "'");
    return in;
}

// Writes through a callback either to a file or to stdout ("-" or empty).
template <typename Fn>
void with_output(const std::string& path, Fn write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file '" + path + "'");
    write(out);
    out.flush();
    if (!out) throw Error("failed writing output file '" + path + "'");
}

TimeSeries load_series(const std::string& path, const std::optional<std::string>& sensor) {
    auto in = open_input(path);
    return to_series(parse_sensor_csv(in, sensor));
}

/// Inner join on timestamps; returns the aligned pair plus, for each joined
/// row, its index in `a`.
struct AlignedPair {
    TimeSeries a;
    TimeSeries b;
    std::vector<std::size_t> a_index;
};

AlignedPair align_series(const TimeSeries& a, const TimeSeries& b) {
    AlignedPair out;
    out.a.sensor_id = a.sensor_id;
    out.b.sensor_id = b.sensor_id;
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        if (a.timestamps[ia] < b.timestamps[ib]) {
            ++ia;
        } else if (b.timestamps[ib] < a.timestamps[ia]) {
            ++ib;
        } else {
            out.a.push_back(a.timestamps[ia], a.values[ia]);
            out.b.push_back(b.timestamps[ib], b.values[ib]);
            out.a_index.push_back(ia);
            ++ia;
            ++ib;
        }
    }
    if (out.a.empty()) throw EmptyJoin();
    return out;
}

TemporalFeature parse_temporal(const std::string& name) {
    const auto t = temporal_feature_from_name(name);
    if (!t)
        throw ConfigError("unknown temporal feature '" + name +
                          "' (expected none|month|season|weekday)");
    return *t;
}

std::vector<double> raw_feature_rows(const TimeSeries& series, const TimeSeries* oxygen,
                                     TemporalFeature temporal, std::size_t& cols,
                                     std::vector<std::string>& names) {
    names.clear();
    names.push_back(oxygen ? "NH4" : "value");
    if (oxygen) names.push_back("O2");
    if (temporal != TemporalFeature::none) names.push_back(temporal_feature_name(temporal));
    cols = names.size();
    std::vector<double> raw;
    raw.reserve(series.size() * cols);
    for (std::size_t i = 0; i < series.size(); ++i) {
        raw.push_back(series.values[i]);
        if (oxygen) raw.push_back(oxygen->values[i]);
        switch (temporal) {
            case TemporalFeature::month: raw.push_back(month_of(series.timestamps[i])); break;
            case TemporalFeature::season: raw.push_back(season_of(series.timestamps[i])); break;
            case TemporalFeature::weekday: raw.push_back(weekday_of(series.timestamps[i])); break;
            case TemporalFeature::none: break;
        }
    }
    return raw;
}

std::size_t auto_max_outliers(std::size_t n) {
    const auto one_percent =
        static_cast<std::size_t>(std::llround(0.01 * static_cast<double>(n)));
    std::size_t k = std::max<std::size_t>(1, one_percent);
    if (n >= 5) k = std::min(k, (n - 1) / 2 - 1);  // keep below half the series
    return k;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto token = text.substr(start, comma - start);
        if (!token.empty()) out.push_back(token);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

AnomalyReport run_algo(const std::string& algo, const TimeSeries& series,
                       const DetectParams& p);

AnomalyReport run_ldcof(const TimeSeries& series, const DetectParams& p) {
    const TemporalFeature temporal = parse_temporal(p.temporal);

    LdcofConfig cfg;
    cfg.k_clusters = p.clusters;
    cfg.alpha = p.ldcof_alpha;
    cfg.beta = p.ldcof_beta;
    cfg.seed = p.seed;
    if (p.threshold != "auto") {
        try {
            std::size_t pos = 0;
            cfg.score_threshold = std::stod(p.threshold, &pos);
            if (pos != p.threshold.size()) throw std::invalid_argument(p.threshold);
        } catch (const std::exception&) {
            throw ConfigError("threshold must be a number or 'auto', got '" + p.threshold + "'");
        }
    }

    std::optional<TimeSeries> oxygen;
    if (p.oxygen) oxygen = load_series(*p.oxygen, std::nullopt);

    // Detection rows: the input joined with oxygen when present. Flags are
    // scattered back so the report stays aligned with the input series.
    TimeSeries detect_nh4 = series;
    std::optional<TimeSeries> detect_o2;
    std::vector<std::size_t> back_index;
    if (oxygen) {
        auto aligned = align_series(series, *oxygen);
        detect_nh4 = std::move(aligned.a);
        detect_o2 = std::move(aligned.b);
        back_index = std::move(aligned.a_index);
    }

    ClusterModel model;
    FeatureMatrix detect_matrix;
    if (p.model_in) {
        auto in = open_input(*p.model_in);
        model = read_cluster_model(in);
        if (!cfg.score_threshold)
            throw ConfigError("a reloaded model carries no training statistics; "
                              "pass a numeric threshold");
        std::size_t cols = 0;
        std::vector<std::string> names;
        auto raw = raw_feature_rows(detect_nh4, detect_o2 ? &*detect_o2 : nullptr, temporal,
                                    cols, names);
        // Without the training matrix the detection rows are self-scored.
        detect_matrix = zscore_columns(std::move(raw), cols, std::move(names));
    } else {
        TimeSeries train_nh4 = detect_nh4;
        std::optional<TimeSeries> train_o2 = detect_o2;
        if (p.train) {
            train_nh4 = load_series(*p.train, std::nullopt);
            if (oxygen) {
                auto aligned = align_series(train_nh4, *oxygen);
                train_nh4 = std::move(aligned.a);
                train_o2 = std::move(aligned.b);
            }
        }
        std::size_t cols = 0;
        std::vector<std::string> names;
        auto train_raw = raw_feature_rows(train_nh4, train_o2 ? &*train_o2 : nullptr, temporal,
                                          cols, names);
        const FeatureMatrix train_matrix = zscore_columns(std::move(train_raw), cols, names);
        model = ldcof_fit(train_matrix, cfg);

        auto detect_raw = raw_feature_rows(detect_nh4, detect_o2 ? &*detect_o2 : nullptr,
                                           temporal, cols, names);
        detect_matrix = apply_normalization(std::move(detect_raw), cols, names,
                                            train_matrix.normalization);
        if (p.model_out)
            with_output(*p.model_out, [&](std::ostream& out) { write_cluster_model(out, model); });
    }

    AnomalyReport joined = ldcof_detect(model, detect_matrix, cfg);
    if (back_index.empty()) return joined;

    AnomalyReport full;
    full.detector = joined.detector;
    full.config_echo = joined.config_echo + " joined_rows=" + std::to_string(back_index.size());
    full.flags.assign(series.size(), 0);
    full.scores.assign(series.size(), 0.0);
    for (std::size_t r = 0; r < back_index.size(); ++r) {
        full.flags[back_index[r]] = joined.flags[r];
        full.scores[back_index[r]] = joined.scores[r];
    }
    return full;
}

AnomalyReport run_ensemble(const TimeSeries& series, const DetectParams& p) {
    const auto members = split_list(p.members);
    if (members.empty()) throw EmptyEnsemble();
    std::vector<AnomalyReport> reports;
    reports.reserve(members.size());
    for (const auto& member : members) {
        if (member == "ensemble") throw ConfigError("an ensemble cannot contain itself");
        reports.push_back(run_algo(member, series, p));
    }
    VoteStrategy strategy;
    if (p.strategy == "majority")
        strategy = VoteStrategy::majority;
    else if (p.strategy == "weighted")
        strategy = VoteStrategy::weighted;
    else
        throw ConfigError("unknown ensemble strategy '" + p.strategy + "'");

    std::vector<double> weights;
    if (strategy == VoteStrategy::weighted) {
        for (const auto& token : split_list(p.weights)) {
            try {
                weights.push_back(std::stod(token));
            } catch (const std::exception&) {
                throw ConfigError("bad ensemble weight '" + token + "'");
            }
        }
    }
    return ensemble_combine(reports, strategy, weights);
}

AnomalyReport run_algo(const std::string& algo, const TimeSeries& series,
                       const DetectParams& p) {
    if (algo == "baseline") return baseline_detect(series);
    if (algo == "lowhigh-offline") {
        FilterConfig cfg;
        cfg.window = p.window ? p.window : 5;
        cfg.alpha = p.alpha > 0.0 ? p.alpha : 1.0;
        return lowhigh_offline(series, cfg);
    }
    if (algo == "lowhigh-online") {
        FilterConfig cfg;
        cfg.window = p.window ? p.window : 20;
        cfg.alpha = p.alpha > 0.0 ? p.alpha : 0.2;
        return lowhigh_online(series, cfg);
    }
    if (algo == "gaussian") {
        const TimeSeries train = p.train ? load_series(*p.train, std::nullopt) : series;
        const GaussianModel model = fit_gaussian(train.values);
        return gaussian_detect(model, series, p.eps,
                               p.gaussian_window ? std::optional(p.gaussian_window)
                                                 : std::nullopt);
    }
    if (algo == "sesd") {
        EsdConfig cfg;
        cfg.max_outliers = p.max_outliers ? p.max_outliers : auto_max_outliers(series.size());
        cfg.significance = p.significance;
        cfg.period = p.period;
        return sesd_detect(series, cfg);
    }
    if (algo == "ldcof") return run_ldcof(series, p);
    if (algo == "ensemble") return run_ensemble(series, p);
    throw ConfigError("unknown algorithm '" + algo +
                      "' (expected baseline|lowhigh-offline|lowhigh-online|gaussian|sesd|"
                      "ldcof|ensemble)");
}

void print_metrics(std::ostream& out, const ConfusionCounts& c, const EvalMetrics& m) {
    out << "tp=" << c.tp << '\n'
        << "fp=" << c.fp << '\n'
        << "fn=" << c.fn << '\n'
        << "tn=" << c.tn << '\n'
        << "precision=" << format_double(m.precision) << '\n'
        << "recall=" << format_double(m.recall) << '\n'
        << "f1=" << format_double(m.f1) << '\n'
        << "accuracy=" << format_double(m.accuracy) << '\n';
}

void write_metrics_csv(std::ostream& out, const std::string& detector,
                       const ConfusionCounts& c, const EvalMetrics& m, bool header) {
    if (header) out << "detector,tp,fp,fn,tn,precision,recall,f1,accuracy\n";
    out << detector << ',' << c.tp << ',' << c.fp << ',' << c.fn << ',' << c.tn << ','
        << format_double(m.precision) << ',' << format_double(m.recall) << ','
        << format_double(m.f1) << ',' << format_double(m.accuracy) << '\n';
}

}  // namespace

int cmd_clean(const CleanOpts& opts) {
    auto in = open_input(opts.input);
    const auto series = to_series(parse_sensor_csv(in, opts.sensor));

    CleaningConfig cfg;
    cfg.magnitude_cutoff = opts.magnitude_cutoff;
    cfg.drop_negative = !opts.keep_negative;
    cfg.drop_nonfinite = !opts.keep_nonfinite;

    auto [cleaned, report] = clean(series, cfg);
    auto [condensed, dst_report] = condense_dst(cleaned);
    report.condensed_pairs = dst_report.condensed_pairs;

    with_output(opts.output, [&](std::ostream& out) { write_series_csv(out, condensed); });
    if (opts.report_path)
        with_output(*opts.report_path, [&](std::ostream& out) { out << report.to_text(); });
    return 0;
}

int cmd_decompose(const DecomposeOpts& opts) {
    const auto series = load_series(opts.input, opts.sensor);
    const auto d = decompose(series, opts.period);
    with_output(opts.output,
                [&](std::ostream& out) { write_decomposition_csv(out, series.values, d); });
    return 0;
}

int cmd_correlate(const CorrelateOpts& opts) {
    const auto x = load_series(opts.input_x, opts.sensor_x);
    const auto y = load_series(opts.input_y, opts.sensor_y);
    const auto aligned = align_series(x, y);
    const double r_pearson = pearson(aligned.a.values, aligned.b.values);
    const double r_spearman = spearman(aligned.a.values, aligned.b.values);
    const double r_kendall = kendall(aligned.a.values, aligned.b.values);

    std::cout << "pairs=" << aligned.a.size() << '\n'
              << "pearson=" << format_double(r_pearson) << '\n'
              << "spearman=" << format_double(r_spearman) << '\n'
              << "kendall=" << format_double(r_kendall) << '\n';
    if (opts.output)
        with_output(*opts.output, [&](std::ostream& out) {
            out << "pearson,spearman,kendall\n"
                << format_double(r_pearson) << ',' << format_double(r_spearman) << ','
                << format_double(r_kendall) << '\n';
        });
    return 0;
}

int cmd_inject(const InjectOpts& opts) {
    const auto series = load_series(opts.input, opts.sensor);
    InjectionConfig cfg;
    cfg.rate = opts.rate;
    cfg.offset_min = opts.offset_min;
    cfg.offset_max = opts.offset_max;
    cfg.seed = opts.seed;
    const auto labeled = inject(series, cfg);
    with_output(opts.output, [&](std::ostream& out) { write_labeled_csv(out, labeled); });
    return 0;
}

int cmd_detect(const DetectOpts& opts) {
    const auto series = load_series(opts.input, opts.sensor);
    const auto report = run_algo(opts.algo, series, opts.params);

    std::map<std::string, std::string> header;
    header["input"] = opts.input;
    header["seed"] = std::to_string(opts.params.seed);
    with_output(opts.output,
                [&](std::ostream& out) { write_report_csv(out, series, report, header); });

    if (opts.labels) {
        auto in = open_input(*opts.labels);
        const auto labeled = read_labeled_csv(in);
        const auto c = confusion(report, labeled.labels);
        print_metrics(std::cout, c, metrics(c));
    }
    return 0;
}

int cmd_evaluate(const EvaluateOpts& opts) {
    auto rin = open_input(opts.report);
    const auto rf = read_report_csv(rin);
    auto lin = open_input(opts.labels);
    const auto labeled = read_labeled_csv(lin);

    const auto c = confusion(rf.report, labeled.labels);
    const auto m = metrics(c);
    print_metrics(std::cout, c, m);
    if (opts.output)
        with_output(*opts.output, [&](std::ostream& out) {
            write_metrics_csv(out, rf.report.detector, c, m, true);
        });

    if (opts.fault_output) {
        FaultPolicy policy;
        policy.interval_seconds = static_cast<std::int64_t>(opts.fault_interval_minutes * 60.0);
        policy.min_events = opts.fault_min_events;
        const auto intervals = fault_flag(rf.series, rf.report, policy);
        with_output(*opts.fault_output, [&](std::ostream& out) {
            out << "start,end,count\n";
            for (const auto& iv : intervals)
                out << format_timestamp(iv.start) << ',' << format_timestamp(iv.end) << ','
                    << iv.count << '\n';
        });
    }

    if (opts.frequency_output) {
        const auto start = parse_timestamp(opts.window_start);
        const auto end = parse_timestamp(opts.window_end);
        if (!start || !end)
            throw ConfigError("window-start/window-end must be 'YYYY-MM-DD HH:MM:SS'");
        const auto wf = window_frequency(
            rf.series, rf.report,
            static_cast<std::int64_t>(opts.bin_minutes * 60.0), *start, *end);
        with_output(*opts.frequency_output, [&](std::ostream& out) {
            out << "# in_rate=" << format_double(wf.in_rate)
                << " out_rate=" << format_double(wf.out_rate) << '\n';
            out << "bin_start,count\n";
            for (std::size_t b = 0; b < wf.bin_counts.size(); ++b)
                out << format_timestamp(wf.bin_origin +
                                        static_cast<Timestamp>(b) * wf.bin_seconds)
                    << ',' << wf.bin_counts[b] << '\n';
        });
    }
    return 0;
}

int cmd_pipeline(const PipelineOpts& opts) {
    auto cfg_in = open_input(opts.config_path);
    const auto cfg = ConfigFile::parse(cfg_in);

    const std::string input = cfg.require("pipeline.input");
    const std::optional<std::string> sensor = cfg.get("pipeline.sensor");
    const auto seed = static_cast<std::uint64_t>(cfg.get_int("pipeline.seed", 0));
    int threads = opts.threads ? *opts.threads
                               : static_cast<int>(cfg.get_int("pipeline.threads", 1));
    if (threads < 1) throw ConfigError("threads must be >= 1");
    const std::string output =
        opts.output ? *opts.output : cfg.get_or("pipeline.output", "");

    // clean
    auto in = open_input(input);
    const auto raw = to_series(parse_sensor_csv(in, sensor));
    CleaningConfig clean_cfg;
    clean_cfg.magnitude_cutoff = cfg.get_double("clean.magnitude_cutoff", 1e6);
    clean_cfg.drop_negative = cfg.get_bool("clean.drop_negative", true);
    clean_cfg.drop_nonfinite = cfg.get_bool("clean.drop_nonfinite", true);
    auto [cleaned0, clean_report] = clean(raw, clean_cfg);
    auto [cleaned, dst_report] = condense_dst(cleaned0);

    // inject
    InjectionConfig inject_cfg;
    inject_cfg.rate = cfg.get_double("inject.rate", 0.01);
    inject_cfg.offset_min = cfg.get_double("inject.offset_min", 1.0);
    inject_cfg.offset_max = cfg.get_double("inject.offset_max", 4.0);
    inject_cfg.seed = seed;
    const auto labeled = inject(cleaned, inject_cfg);
    const TimeSeries& test = labeled.series;

    if (const auto path = cfg.get("pipeline.export_cleaned"))
        with_output(*path, [&](std::ostream& out) { write_series_csv(out, cleaned); });
    if (const auto path = cfg.get("pipeline.export_injected"))
        with_output(*path, [&](std::ostream& out) { write_series_csv(out, test); });
    if (const auto path = cfg.get("pipeline.export_labeled"))
        with_output(*path, [&](std::ostream& out) { write_labeled_csv(out, labeled); });

    // Per-detector parameters; the gaussian model trains on the cleaned
    // pre-injection series unless a path overrides it.
    auto params_for = [&](const std::string& algo) {
        DetectParams p;
        p.seed = seed;
        if (algo == "lowhigh-offline") {
            p.window = static_cast<std::size_t>(cfg.get_int("lowhigh_offline.window", 5));
            p.alpha = cfg.get_double("lowhigh_offline.alpha", 1.0);
        } else if (algo == "lowhigh-online") {
            p.window = static_cast<std::size_t>(cfg.get_int("lowhigh_online.window", 20));
            p.alpha = cfg.get_double("lowhigh_online.alpha", 0.2);
        }
        p.eps = cfg.get_double("gaussian.eps", 0.08);
        p.gaussian_window = static_cast<std::size_t>(cfg.get_int("gaussian.window", 0));
        p.max_outliers = static_cast<std::size_t>(cfg.get_int("sesd.max_outliers", 0));
        p.significance = cfg.get_double("sesd.significance", 0.05);
        p.period = static_cast<std::size_t>(cfg.get_int("sesd.period", 1440));
        p.clusters = static_cast<std::size_t>(cfg.get_int("ldcof.clusters", 12));
        p.ldcof_alpha = cfg.get_double("ldcof.alpha", 0.75);
        p.ldcof_beta = cfg.get_double("ldcof.beta", 0.25);
        p.threshold = cfg.get_or("ldcof.threshold", "auto");
        p.temporal = cfg.get_or("ldcof.temporal", "month");
        if (const auto o2 = cfg.get("ldcof.oxygen")) p.oxygen = *o2;
        if (const auto t = cfg.get("ldcof.train")) p.train = *t;
        return p;
    };

    const std::vector<std::string> algos = {"baseline", "lowhigh-offline", "lowhigh-online",
                                            "gaussian", "sesd", "ldcof"};

    auto run_one = [&](const std::string& algo) -> AnomalyReport {
        if (algo == "gaussian") {
            DetectParams p = params_for(algo);
            const GaussianModel model = fit_gaussian(cleaned.values);
            return gaussian_detect(model, test, p.eps,
                                   p.gaussian_window ? std::optional(p.gaussian_window)
                                                     : std::nullopt);
        }
        return run_algo(algo, test, params_for(algo));
    };

    std::vector<AnomalyReport> reports(algos.size());
    if (threads > 1) {
        std::vector<std::future<AnomalyReport>> futures;
        futures.reserve(algos.size());
        for (const auto& algo : algos)
            futures.push_back(
                std::async(std::launch::async, [&, algo]() { return run_one(algo); }));
        for (std::size_t i = 0; i < futures.size(); ++i) reports[i] = futures[i].get();
    } else {
        for (std::size_t i = 0; i < algos.size(); ++i) reports[i] = run_one(algos[i]);
    }

    const std::string strategy = cfg.get_or("ensemble.strategy", "majority");
    AnomalyReport combined;
    if (strategy == "weighted") {
        std::vector<double> weights;
        for (const auto& token : split_list(cfg.get_or("ensemble.weights", "")))
            weights.push_back(std::stod(token));
        combined = ensemble_combine(reports, VoteStrategy::weighted, weights);
    } else if (strategy == "majority") {
        combined = ensemble_combine(reports, VoteStrategy::majority);
    } else {
        throw ConfigError("unknown ensemble strategy '" + strategy + "'");
    }

    with_output(output, [&](std::ostream& out) {
        out << "# pipeline seed=" << seed << " input=" << input
            << " n=" << test.size() << " positives=" << labeled.positive_count()
            << " removed=" << clean_report.total_removed()
            << " condensed_pairs=" << dst_report.condensed_pairs << '\n';
        bool header = true;
        for (std::size_t i = 0; i < algos.size(); ++i) {
            const auto c = confusion(reports[i], labeled.labels);
            write_metrics_csv(out, reports[i].detector, c, metrics(c), header);
            header = false;
        }
        const auto c = confusion(combined, labeled.labels);
        write_metrics_csv(out, combined.detector, c, metrics(c), false);
    });
    return 0;
}

int cmd_plotdata(const PlotOpts& opts) {
    if (opts.kind == "series") {
        const auto series = load_series(opts.input, opts.sensor);
        with_output(opts.output, [&](std::ostream& out) {
            out << "timestamp,value\n";
            for (std::size_t i = 0; i < series.size(); ++i)
                out << format_timestamp(series.timestamps[i]) << ','
                    << format_double(series.values[i]) << '\n';
        });
        if (opts.svg)
            with_output(*opts.svg, [&](std::ostream& out) {
                write_series_svg(out, series.values, {});
            });
        return 0;
    }
    if (opts.kind == "decomposition") {
        DecomposeOpts d;
        d.input = opts.input;
        d.output = opts.output;
        d.sensor = opts.sensor;
        d.period = opts.period;
        return cmd_decompose(d);
    }
    if (opts.kind == "histogram") {
        const auto series = load_series(opts.input, opts.sensor);
        const auto bins = histogram(series.values, opts.round_digits);
        with_output(opts.output, [&](std::ostream& out) {
            write_histogram_csv(out, bins, series.size());
        });
        return 0;
    }
    if (opts.kind == "report-overlay") {
        if (!opts.report) throw ConfigError("report-overlay needs --report");
        const auto series = load_series(opts.input, opts.sensor);
        auto rin = open_input(*opts.report);
        const auto rf = read_report_csv(rin);

        // Join series and report rows on timestamp.
        std::size_t is = 0, ir = 0;
        std::ostringstream joined;
        joined << "timestamp,value,score,flag\n";
        std::vector<double> values;
        std::vector<std::uint8_t> flags;
        while (is < series.size() && ir < rf.series.size()) {
            if (series.timestamps[is] < rf.series.timestamps[ir]) {
                ++is;
            } else if (rf.series.timestamps[ir] < series.timestamps[is]) {
                ++ir;
            } else {
                joined << format_timestamp(series.timestamps[is]) << ','
                       << format_double(series.values[is]) << ','
                       << format_double(rf.report.scores[ir]) << ','
                       << int(rf.report.flags[ir]) << '\n';
                values.push_back(series.values[is]);
                flags.push_back(rf.report.flags[ir]);
                ++is;
                ++ir;
            }
        }
        with_output(opts.output, [&](std::ostream& out) { out << joined.str(); });
        if (opts.svg)
            with_output(*opts.svg,
                        [&](std::ostream& out) { write_series_svg(out, values, flags); });
        return 0;
    }
    throw ConfigError("unknown plot kind '" + opts.kind +
                      "' (expected series|decomposition|histogram|report-overlay)");
}

}  // namespace tsad::cli
