#include "tsad/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "tsad/errors.hpp"
#include "tsad/format.hpp"
#include "tsad/rng.hpp"

namespace tsad {

const char* temporal_feature_name(TemporalFeature t) {
    switch (t) {
        case TemporalFeature::none: return "none";
        case TemporalFeature::month: return "month";
        case TemporalFeature::season: return "season";
        case TemporalFeature::weekday: return "weekday";
    }
    return "none";
}

std::optional<TemporalFeature> temporal_feature_from_name(std::string_view name) {
    if (name == "none") return TemporalFeature::none;
    if (name == "month") return TemporalFeature::month;
    if (name == "season") return TemporalFeature::season;
    if (name == "weekday") return TemporalFeature::weekday;
    return std::nullopt;
}

namespace {

double temporal_value(Timestamp ts, TemporalFeature t) {
    switch (t) {
        case TemporalFeature::month: return month_of(ts);
        case TemporalFeature::season: return season_of(ts);
        case TemporalFeature::weekday: return weekday_of(ts);
        case TemporalFeature::none: break;
    }
    return 0.0;
}

double sq_dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace

FeatureMatrix zscore_columns(std::vector<double> raw_rows, std::size_t cols,
                             std::vector<std::string> column_names) {
    FeatureMatrix m;
    m.cols = cols;
    m.column_names = std::move(column_names);
    m.data = std::move(raw_rows);
    const std::size_t n = m.rows();
    m.normalization.resize(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        double sum = 0.0;
        for (std::size_t r = 0; r < n; ++r) sum += m.data[r * cols + c];
        const double mean = n > 0 ? sum / static_cast<double>(n) : 0.0;
        double ss = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double d = m.data[r * cols + c] - mean;
            ss += d * d;
        }
        const double std_dev = n > 0 ? std::sqrt(ss / static_cast<double>(n)) : 0.0;
        m.normalization[c] = {mean, std_dev};
        for (std::size_t r = 0; r < n; ++r) {
            double& v = m.data[r * cols + c];
            v = std_dev > 0.0 ? (v - mean) / std_dev : 0.0;
        }
    }
    return m;
}

FeatureMatrix apply_normalization(std::vector<double> raw_rows, std::size_t cols,
                                  std::vector<std::string> column_names,
                                  const std::vector<std::pair<double, double>>& normalization) {
    if (normalization.size() != cols)
        throw DimensionMismatch("normalization has " + std::to_string(normalization.size()) +
                                " columns, data has " + std::to_string(cols));
    FeatureMatrix m;
    m.cols = cols;
    m.column_names = std::move(column_names);
    m.data = std::move(raw_rows);
    m.normalization = normalization;
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < cols; ++c) {
        const auto [mean, std_dev] = normalization[c];
        for (std::size_t r = 0; r < n; ++r) {
            double& v = m.data[r * cols + c];
            v = std_dev > 0.0 ? (v - mean) / std_dev : 0.0;
        }
    }
    return m;
}

FeatureMatrix build_features(const TimeSeries& ammonia, const TimeSeries& oxygen,
                             TemporalFeature temporal) {
    const std::size_t cols = temporal == TemporalFeature::none ? 2 : 3;
    std::vector<double> raw;
    std::size_t joined = 0;
    std::size_t ia = 0, io = 0;
    while (ia < ammonia.size() && io < oxygen.size()) {
        const Timestamp ta = ammonia.timestamps[ia];
        const Timestamp to = oxygen.timestamps[io];
        if (ta < to) {
            ++ia;
        } else if (to < ta) {
            ++io;
        } else {
            raw.push_back(ammonia.values[ia]);
            raw.push_back(oxygen.values[io]);
            if (cols == 3) raw.push_back(temporal_value(ta, temporal));
            ++joined;
            ++ia;
            ++io;
        }
    }
    if (joined == 0) throw EmptyJoin();

    std::vector<std::string> names = {"NH4", "O2"};
    if (cols == 3) names.emplace_back(temporal_feature_name(temporal));
    FeatureMatrix m = zscore_columns(std::move(raw), cols, std::move(names));
    m.dropped_rows = (ammonia.size() - joined) + (oxygen.size() - joined);
    return m;
}

FeatureMatrix build_features(const TimeSeries& series, TemporalFeature temporal) {
    const std::size_t cols = temporal == TemporalFeature::none ? 1 : 2;
    std::vector<double> raw;
    raw.reserve(series.size() * cols);
    for (std::size_t i = 0; i < series.size(); ++i) {
        raw.push_back(series.values[i]);
        if (cols == 2) raw.push_back(temporal_value(series.timestamps[i], temporal));
    }
    if (raw.empty()) throw EmptyJoin();
    std::vector<std::string> names = {"value"};
    if (cols == 2) names.emplace_back(temporal_feature_name(temporal));
    return zscore_columns(std::move(raw), cols, std::move(names));
}

bool ClusterModel::is_large(std::size_t c) const {
    return std::find(large_set.begin(), large_set.end(), c) != large_set.end();
}

void LdcofConfig::validate() const {
    if (k_clusters < 1) throw ConfigError("k_clusters must be >= 1");
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw ConfigError("ldcof alpha must be in (0, 1)");
    if (!(beta > 0.0) || !(beta < 1.0)) throw ConfigError("ldcof beta must be in (0, 1)");
    if (score_threshold && std::isnan(*score_threshold))
        throw ConfigError("score_threshold must be a number or auto");
    if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
}

namespace {

// Nearest centroid, ties to the lowest index.
std::size_t nearest_centroid(const ClusterModel& model, std::span<const double> point) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < model.k; ++c) {
        const double d = sq_dist(point, model.centroid(c));
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

void assign_all(const FeatureMatrix& matrix, const ClusterModel& model,
                std::vector<std::size_t>& assign) {
    const std::size_t n = matrix.rows();
    assign.resize(n);
    for (std::size_t i = 0; i < n; ++i) assign[i] = nearest_centroid(model, matrix.row(i));
}

}  // namespace

ClusterModel kmeans_fit(const FeatureMatrix& matrix, std::size_t k, std::uint64_t seed,
                        std::size_t max_iter) {
    if (k < 1) throw ConfigError("k must be >= 1");
    if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
    const std::size_t n = matrix.rows();
    if (n < k)
        throw TooFewRows("k-means needs at least k = " + std::to_string(k) + " rows, got " +
                         std::to_string(n));

    ClusterModel model;
    model.k = k;
    model.dim = matrix.cols;
    model.seed = seed;
    model.column_names = matrix.column_names;

    // Seeded sample of k distinct rows (partial Fisher-Yates).
    SplitMix64 rng(seed);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.bounded(n - i));
        std::swap(idx[i], idx[j]);
    }
    model.centroids.resize(k * model.dim);
    for (std::size_t c = 0; c < k; ++c) {
        const auto row = matrix.row(idx[c]);
        std::copy(row.begin(), row.end(), model.centroids.begin() + c * model.dim);
    }

    std::vector<std::size_t> assign, prev_assign;
    std::vector<double> sums(k * model.dim);
    std::vector<std::size_t> counts(k);

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        assign_all(matrix, model, assign);

        // Re-seed any emptied cluster to the point farthest from its own
        // centroid, one at a time, and reassign.
        for (std::size_t attempt = 0; attempt < 2 * k; ++attempt) {
            std::fill(counts.begin(), counts.end(), 0);
            for (std::size_t i = 0; i < n; ++i) ++counts[assign[i]];
            std::size_t empty = k;
            for (std::size_t c = 0; c < k; ++c)
                if (counts[c] == 0) {
                    empty = c;
                    break;
                }
            if (empty == k) break;
            std::size_t far = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = sq_dist(matrix.row(i), model.centroid(assign[i]));
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            const auto row = matrix.row(far);
            std::copy(row.begin(), row.end(), model.centroids.begin() + empty * model.dim);
            assign_all(matrix, model, assign);
        }

        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            inertia += sq_dist(matrix.row(i), model.centroid(assign[i]));
        model.inertia_history.push_back(inertia);

        if (assign == prev_assign) break;
        prev_assign = assign;
        if (iter + 1 == max_iter) break;

        std::fill(sums.begin(), sums.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = matrix.row(i);
            const std::size_t c = assign[i];
            ++counts[c];
            for (std::size_t d = 0; d < model.dim; ++d) sums[c * model.dim + d] += row[d];
        }
        for (std::size_t c = 0; c < k; ++c)
            if (counts[c] > 0)
                for (std::size_t d = 0; d < model.dim; ++d)
                    model.centroids[c * model.dim + d] =
                        sums[c * model.dim + d] / static_cast<double>(counts[c]);
    }

    model.assignments = std::move(assign);
    model.inertia = model.inertia_history.back();
    model.sizes.assign(k, 0);
    model.member_dist.resize(n);
    std::vector<double> dist_sum(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = model.assignments[i];
        ++model.sizes[c];
        model.member_dist[i] = std::sqrt(sq_dist(matrix.row(i), model.centroid(c)));
        dist_sum[c] += model.member_dist[i];
    }
    model.avg_dist.assign(k, 0.0);
    for (std::size_t c = 0; c < k; ++c)
        if (model.sizes[c] > 0) model.avg_dist[c] = dist_sum[c] / static_cast<double>(model.sizes[c]);

    // Until split_clusters runs, treat every cluster as large.
    model.large_set.resize(k);
    std::iota(model.large_set.begin(), model.large_set.end(), 0);
    return model;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_cluster_sizes(
    std::span<const std::size_t> sizes, double alpha, double beta) {
    const std::size_t k = sizes.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sizes[a] > sizes[b]; });

    const double total =
        static_cast<double>(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}));
    std::size_t boundary = k;  // all large when nothing triggers
    double cumulative = 0.0;
    for (std::size_t pos = 0; pos < k; ++pos) {
        cumulative += static_cast<double>(sizes[order[pos]]);
        if (cumulative >= alpha * total) {
            boundary = pos + 1;
            break;
        }
        if (pos + 1 < k && static_cast<double>(sizes[order[pos + 1]]) <=
                               beta * static_cast<double>(sizes[order[pos]])) {
            boundary = pos + 1;
            break;
        }
    }

    std::vector<std::size_t> large(order.begin(), order.begin() + boundary);
    std::vector<std::size_t> small(order.begin() + boundary, order.end());
    std::sort(large.begin(), large.end());
    std::sort(small.begin(), small.end());
    return {std::move(large), std::move(small)};
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_clusters(
    const ClusterModel& model, double alpha, double beta) {
    return split_cluster_sizes(model.sizes, alpha, beta);
}

ClusterModel ldcof_fit(const FeatureMatrix& matrix, const LdcofConfig& cfg) {
    cfg.validate();
    ClusterModel model = kmeans_fit(matrix, cfg.k_clusters, cfg.seed, cfg.max_iter);
    auto [large, small] = split_clusters(model, cfg.alpha, cfg.beta);
    model.large_set = std::move(large);
    model.small_set = std::move(small);
    return model;
}

double ldcof_score(const ClusterModel& model, std::span<const double> point) {
    if (point.size() != model.dim)
        throw DimensionMismatch("point has " + std::to_string(point.size()) +
                                " dimensions, model has " + std::to_string(model.dim));
    if (model.large_set.empty()) throw DegenerateCluster("model has no large clusters");

    const std::size_t home = nearest_centroid(model, point);
    if (model.is_large(home)) {
        if (!(model.avg_dist[home] > 0.0))
            throw DegenerateCluster("governing large cluster has zero average distance");
        return std::sqrt(sq_dist(point, model.centroid(home))) / model.avg_dist[home];
    }
    double best = std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::size_t c : model.large_set) {
        if (!(model.avg_dist[c] > 0.0)) continue;
        best = std::min(best, std::sqrt(sq_dist(point, model.centroid(c))) / model.avg_dist[c]);
        found = true;
    }
    if (!found) throw DegenerateCluster("all large clusters have zero average distance");
    return best;
}

double ldcof_auto_threshold(const ClusterModel& model) {
    if (model.member_dist.empty() || model.assignments.empty())
        throw ConfigError("auto threshold needs a model with training statistics");
    double sum = 0.0, sum_sq = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < model.assignments.size(); ++i) {
        const std::size_t c = model.assignments[i];
        if (!model.is_large(c) || !(model.avg_dist[c] > 0.0)) continue;
        const double ratio = model.member_dist[i] / model.avg_dist[c];
        sum += ratio;
        sum_sq += ratio * ratio;
        ++count;
    }
    if (count == 0) throw DegenerateCluster("no usable large-cluster members for the threshold");
    const double mean = sum / static_cast<double>(count);
    const double var = std::max(0.0, sum_sq / static_cast<double>(count) - mean * mean);
    return mean + std::sqrt(var);
}

AnomalyReport ldcof_detect(const ClusterModel& model, const FeatureMatrix& matrix,
                           const LdcofConfig& cfg) {
    cfg.validate();
    if (matrix.cols != model.dim)
        throw DimensionMismatch("matrix has " + std::to_string(matrix.cols) +
                                " columns, model has " + std::to_string(model.dim));
    const double threshold = cfg.score_threshold ? *cfg.score_threshold
                                                 : ldcof_auto_threshold(model);

    const std::size_t n = matrix.rows();
    AnomalyReport r;
    r.detector = "ldcof";
    r.config_echo = "detector=ldcof k=" + std::to_string(model.k) +
                    " alpha=" + format_double(cfg.alpha) + " beta=" + format_double(cfg.beta) +
                    " threshold=" + format_double(threshold) + " seed=" + std::to_string(model.seed);
    r.flags.assign(n, 0);
    r.scores.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        r.scores[i] = ldcof_score(model, matrix.row(i));
        r.flags[i] = r.scores[i] > threshold ? 1 : 0;
    }
    return r;
}

void write_cluster_model(std::ostream& out, const ClusterModel& model) {
    out << "k=" << model.k << '\n';
    out << "seed=" << model.seed << '\n';
    out << "columns=";
    for (std::size_t c = 0; c < model.column_names.size(); ++c) {
        if (c) out << ',';
        out << model.column_names[c];
    }
    out << '\n';
    for (std::size_t c = 0; c < model.k; ++c) {
        const auto cen = model.centroid(c);
        for (std::size_t d = 0; d < model.dim; ++d) {
            if (d) out << ',';
            out << format_double(cen[d]);
        }
        out << '\n';
    }
    auto write_set = [&](const char* name, const std::vector<std::size_t>& set) {
        out << name << '=';
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (i) out << ',';
            out << set[i];
        }
        out << '\n';
    };
    write_set("large", model.large_set);
    write_set("small", model.small_set);
    for (std::size_t c = 0; c < model.k; ++c)
        out << "avg_dist=" << format_double(model.avg_dist[c]) << '\n';
}

namespace {

std::vector<std::string> split_on_commas(const std::string& text) {
    std::vector<std::string> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(text.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string expect_line(std::istream& in, const char* what) {
    std::string line;
    if (!std::getline(in, line)) throw InputError(std::string("model file truncated at ") + what);
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    return line;
}

std::string expect_keyed(std::istream& in, const std::string& key) {
    const std::string line = expect_line(in, key.c_str());
    if (line.rfind(key + "=", 0) != 0)
        throw InputError("model file: expected '" + key + "=', got '" + line + "'");
    return line.substr(key.size() + 1);
}

}  // namespace

ClusterModel read_cluster_model(std::istream& in) {
    ClusterModel model;
    model.k = std::stoul(expect_keyed(in, "k"));
    model.seed = std::stoull(expect_keyed(in, "seed"));
    model.column_names = split_on_commas(expect_keyed(in, "columns"));
    model.dim = model.column_names.size();
    if (model.k < 1 || model.dim < 1) throw InputError("model file: bad k or columns");

    model.centroids.reserve(model.k * model.dim);
    for (std::size_t c = 0; c < model.k; ++c) {
        const auto fields = split_on_commas(expect_line(in, "centroid row"));
        if (fields.size() != model.dim) throw InputError("model file: centroid width mismatch");
        for (const auto& f : fields) model.centroids.push_back(std::stod(f));
    }
    auto read_set = [&](const std::string& key) {
        std::vector<std::size_t> set;
        for (const auto& f : split_on_commas(expect_keyed(in, key)))
            if (!f.empty()) set.push_back(std::stoul(f));
        return set;
    };
    model.large_set = read_set("large");
    model.small_set = read_set("small");
    model.avg_dist.reserve(model.k);
    for (std::size_t c = 0; c < model.k; ++c)
        model.avg_dist.push_back(std::stod(expect_keyed(in, "avg_dist")));
    return model;
}

}  // namespace tsad
