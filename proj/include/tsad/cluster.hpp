#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tsad/detectors.hpp"
#include "tsad/series.hpp"

namespace tsad {

enum class TemporalFeature { none, month, season, weekday };

const char* temporal_feature_name(TemporalFeature t);
std::optional<TemporalFeature> temporal_feature_from_name(std::string_view name);

/// Row-major feature matrix. Values are stored z-scored; the per-column
/// (mean, std) pairs used for the scoring are kept for the inverse mapping.
/// A constant column z-scores to 0 by convention.
struct FeatureMatrix {
    std::vector<double> data;
    std::size_t cols = 0;
    std::vector<std::string> column_names;
    std::vector<std::pair<double, double>> normalization;  // (mean, std) per column
    std::size_t dropped_rows = 0;  // timestamps lost to the inner join

    std::size_t rows() const { return cols == 0 ? 0 : data.size() / cols; }
    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(data).subspan(i * cols, cols);
    }
};

/// Inner-joins the two series on timestamps and assembles [NH4, O2,
/// temporal?] columns, z-scored. The temporal column is the raw calendar
/// integer (month 1-12, season 0-3, weekday 0-6) before scoring. Throws
/// EmptyJoin when no timestamps align.
FeatureMatrix build_features(const TimeSeries& ammonia, const TimeSeries& oxygen,
                             TemporalFeature temporal);

/// Univariate variant: [value, temporal?].
FeatureMatrix build_features(const TimeSeries& series, TemporalFeature temporal);

/// Z-scores already-assembled raw columns (used by both build_features
/// overloads and directly by tests).
FeatureMatrix zscore_columns(std::vector<double> raw_rows, std::size_t cols,
                             std::vector<std::string> column_names);

/// Scores raw columns with a previously computed normalization, so points
/// scored against a trained model live in the model's feature space.
FeatureMatrix apply_normalization(std::vector<double> raw_rows, std::size_t cols,
                                  std::vector<std::string> column_names,
                                  const std::vector<std::pair<double, double>>& normalization);

struct ClusterModel {
    std::size_t k = 0;
    std::size_t dim = 0;
    std::uint64_t seed = 0;
    std::vector<double> centroids;  // k x dim, row-major
    std::vector<std::size_t> assignments;
    std::vector<std::size_t> sizes;
    std::vector<double> avg_dist;     // mean member distance per cluster
    std::vector<double> member_dist;  // per training row, distance to its centroid
    std::vector<std::size_t> large_set;
    std::vector<std::size_t> small_set;
    std::vector<double> inertia_history;  // one entry per Lloyd iteration
    double inertia = 0.0;
    std::vector<std::string> column_names;

    std::span<const double> centroid(std::size_t c) const {
        return std::span<const double>(centroids).subspan(c * dim, dim);
    }
    bool is_large(std::size_t c) const;
};

struct LdcofConfig {
    std::size_t k_clusters = 12;
    double alpha = 0.75;
    double beta = 0.25;
    std::optional<double> score_threshold;  // nullopt = auto (mean + std of member ratios)
    std::uint64_t seed = 0;
    std::size_t max_iter = 100;

    void validate() const;
};

/// Lloyd's algorithm from a seeded sample of K distinct rows. Assignment
/// ties break toward the lowest cluster index; an emptied cluster is
/// re-seeded to the point farthest from its current centroid. Deterministic
/// for a given (matrix, K, seed, max_iter). The large/small split is left
/// for split_clusters / ldcof_fit.
ClusterModel kmeans_fit(const FeatureMatrix& matrix, std::size_t k, std::uint64_t seed,
                        std::size_t max_iter = 100);

/// Boundary rule on size-sorted clusters: b is the first position where the
/// cumulative size reaches alpha*|D| or the next/current size ratio drops
/// to beta; everything up to b is large. Returns original cluster indices.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_clusters(
    const ClusterModel& model, double alpha, double beta);
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_cluster_sizes(
    std::span<const std::size_t> sizes, double alpha, double beta);

/// kmeans_fit + split_clusters stored into the model.
ClusterModel ldcof_fit(const FeatureMatrix& matrix, const LdcofConfig& cfg);

/// LDCOF outlier score: distance to the governing large centroid divided by
/// that cluster's average member distance. Points landing in a small
/// cluster take the minimum ratio over the large clusters.
double ldcof_score(const ClusterModel& model, std::span<const double> point);

/// Auto threshold: mean + one standard deviation of the training member
/// ratios within large clusters. Requires a model with training statistics.
double ldcof_auto_threshold(const ClusterModel& model);

AnomalyReport ldcof_detect(const ClusterModel& model, const FeatureMatrix& matrix,
                           const LdcofConfig& cfg);

/// Text export (k=, seed=, columns=, centroid rows, large=/small=,
/// avg_dist= per cluster). A reloaded model reproduces ldcof_score exactly;
/// training-only statistics (assignments, member distances) are not kept.
void write_cluster_model(std::ostream& out, const ClusterModel& model);
ClusterModel read_cluster_model(std::istream& in);

}  // namespace tsad
