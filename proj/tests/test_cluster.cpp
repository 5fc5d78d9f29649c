#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include "testutil.hpp"
#include "tsad/cluster.hpp"
#include "tsad/errors.hpp"

using namespace tsad;

namespace {

FeatureMatrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    FeatureMatrix m;
    m.cols = rows.empty() ? 0 : rows[0].size();
    for (const auto& r : rows) m.data.insert(m.data.end(), r.begin(), r.end());
    for (std::size_t c = 0; c < m.cols; ++c) {
        m.column_names.push_back("f" + std::to_string(c));
        m.normalization.emplace_back(0.0, 1.0);
    }
    return m;
}

// Hand-built model: three clusters on a line, cluster 2 small.
ClusterModel toy_model() {
    ClusterModel m;
    m.k = 3;
    m.dim = 2;
    m.centroids = {0.0, 0.0, 10.0, 0.0, 5.0, 4.0};
    m.sizes = {40, 40, 2};
    m.avg_dist = {1.0, 2.0, 0.1};
    m.large_set = {0, 1};
    m.small_set = {2};
    return m;
}

}  // namespace

TEST_SUITE("cluster") {

TEST_CASE("build_features: single aligned point degenerates to zero z-scores") {
    const auto a = testutil::make_series({3.0});
    const auto o = testutil::make_series({8.0});
    const auto m = build_features(a, o, TemporalFeature::none);
    REQUIRE(m.rows() == 1);
    REQUIRE(m.cols == 2);
    CHECK(m.row(0)[0] == 0.0);
    CHECK(m.row(0)[1] == 0.0);
    CHECK(m.normalization[0].first == 3.0);
    CHECK(m.normalization[1].first == 8.0);
}

TEST_CASE("build_features: month column carries the calendar month before scoring") {
    const auto may = *parse_timestamp("2016-05-07 12:00:00");
    const auto a = testutil::make_series({3.0, 4.0}, may);
    const auto o = testutil::make_series({8.0, 7.0}, may);
    const auto m = build_features(a, o, TemporalFeature::month);
    REQUIRE(m.cols == 3);
    CHECK(m.column_names[2] == "month");
    CHECK(m.normalization[2].first == 5.0);  // raw mean of the month column
    CHECK(m.normalization[2].second == 0.0);

    CHECK(season_of(may) == 1);
    CHECK(weekday_of(may) == 5);  // 2016-05-07 was a Saturday
}

TEST_CASE("build_features: inner join size matches the timestamp intersection") {
    testutil::Gen gen(0x301);
    TimeSeries a, o;
    a.sensor_id = "NH4";
    o.sensor_id = "O2";
    std::set<Timestamp> ta, to;
    for (int i = 0; i < 400; ++i) {
        const Timestamp ts = 1000 + 60 * i;
        if (gen.uniform01() > 0.1) {
            a.push_back(ts, gen.uniform(0, 5));
            ta.insert(ts);
        }
        if (gen.uniform01() > 0.1) {
            o.push_back(ts, gen.uniform(5, 9));
            to.insert(ts);
        }
    }
    std::vector<Timestamp> common;
    std::set_intersection(ta.begin(), ta.end(), to.begin(), to.end(),
                          std::back_inserter(common));
    const auto m = build_features(a, o, TemporalFeature::none);
    CHECK(m.rows() == common.size());
    CHECK(m.dropped_rows == (a.size() - common.size()) + (o.size() - common.size()));

    TimeSeries disjoint;
    disjoint.push_back(1, 1.0);
    CHECK_THROWS_AS(build_features(a, disjoint, TemporalFeature::none), EmptyJoin);
}

TEST_CASE("kmeans: K = row count puts every distinct row on its own centroid") {
    const auto m = matrix_from_rows({{0, 0}, {1, 0}, {2, 5}, {8, 1}, {4, 4}});
    const auto model = kmeans_fit(m, 5, 42);
    CHECK(model.inertia == 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) CHECK(model.member_dist[i] == 0.0);
    std::set<std::size_t> used(model.assignments.begin(), model.assignments.end());
    CHECK(used.size() == 5);
}

TEST_CASE("kmeans: K = 1 converges to the column means") {
    testutil::Gen gen(0x111);
    std::vector<std::vector<double>> rows;
    double mx = 0, my = 0;
    for (int i = 0; i < 200; ++i) {
        rows.push_back({gen.normal(), gen.normal()});
        mx += rows.back()[0];
        my += rows.back()[1];
    }
    const auto model = kmeans_fit(matrix_from_rows(rows), 1, 0);
    CHECK(model.centroid(0)[0] == doctest::Approx(mx / 200).epsilon(1e-12));
    CHECK(model.centroid(0)[1] == doctest::Approx(my / 200).epsilon(1e-12));
}

TEST_CASE("kmeans: two separated blobs are recovered for every seed in a fixed set") {
    testutil::Gen gen(0x222);
    std::vector<std::vector<double>> rows;
    std::vector<int> blob;
    for (int i = 0; i < 300; ++i) {
        const bool second = i % 2 == 1;
        blob.push_back(second);
        const double cx = second ? 100.0 : 0.0;
        rows.push_back({cx + gen.normal(), gen.normal()});
    }
    const auto matrix = matrix_from_rows(rows);
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u, 99u}) {
        const auto model = kmeans_fit(matrix, 2, seed);
        // Oracle: nearest-blob-center labeling must agree with assignments
        // up to cluster relabeling.
        const int label0 = blob[0];
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const bool same_blob = blob[i] == label0;
            const bool same_cluster = model.assignments[i] == model.assignments[0];
            CHECK(same_blob == same_cluster);
        }
        // Inertia never increases across Lloyd's iterations.
        for (std::size_t t = 1; t < model.inertia_history.size(); ++t)
            CHECK(model.inertia_history[t] <= model.inertia_history[t - 1] + 1e-9);
    }
}

TEST_CASE("kmeans: deterministic for fixed inputs; TooFewRows otherwise") {
    testutil::Gen gen(0x333);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 60; ++i) rows.push_back({gen.normal(), gen.normal(), gen.normal()});
    const auto matrix = matrix_from_rows(rows);
    const auto a = kmeans_fit(matrix, 7, 1234);
    const auto b = kmeans_fit(matrix, 7, 1234);
    CHECK(a.centroids == b.centroids);
    CHECK(a.assignments == b.assignments);
    CHECK(a.inertia == b.inertia);

    CHECK_THROWS_AS(kmeans_fit(matrix_from_rows({{1, 2}}), 2, 0), TooFewRows);
}

TEST_CASE("split: cumulative-mass rule fires at 75%") {
    const std::vector<std::size_t> sizes = {50, 30, 10, 10};
    const auto [large, small] = split_cluster_sizes(sizes, 0.75, 0.25);
    CHECK(large == std::vector<std::size_t>{0, 1});
    CHECK(small == std::vector<std::size_t>{2, 3});
}

TEST_CASE("split: size-drop rule fires at the 2/39 cliff") {
    const std::vector<std::size_t> sizes = {40, 39, 2, 1};
    const auto [large, small] = split_cluster_sizes(sizes, 0.99, 0.25);
    CHECK(large == std::vector<std::size_t>{0, 1});
    CHECK(small == std::vector<std::size_t>{2, 3});
}

TEST_CASE("split: single cluster is large; partition covers everything") {
    const auto [large, small] = split_cluster_sizes(std::vector<std::size_t>{17}, 0.75, 0.25);
    CHECK(large == std::vector<std::size_t>{0});
    CHECK(small.empty());

    testutil::Gen gen(0x444);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::size_t> sizes(1 + gen.bounded(12));
        for (auto& s : sizes) s = 1 + gen.bounded(100);
        const auto [lg, sm] = split_cluster_sizes(sizes, 0.75, 0.25);
        CHECK(!lg.empty());
        std::set<std::size_t> all(lg.begin(), lg.end());
        for (auto c : sm) CHECK(all.insert(c).second);  // disjoint
        CHECK(all.size() == sizes.size());              // exhaustive
    }
}

TEST_CASE("ldcof_score: centroid scores 0, one avg-dist away scores 1") {
    const auto model = toy_model();
    CHECK(ldcof_score(model, std::vector<double>{0.0, 0.0}) == 0.0);
    CHECK(ldcof_score(model, std::vector<double>{0.0, 1.0}) == doctest::Approx(1.0));
    CHECK(ldcof_score(model, std::vector<double>{10.0, 2.0}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(ldcof_score(model, std::vector<double>{1.0}), DimensionMismatch);
}

TEST_CASE("ldcof_score: small-cluster points take the min ratio over large clusters") {
    const auto model = toy_model();
    // (5, 4) sits on the small centroid: d to large0 = sqrt(41), to large1 =
    // sqrt(41); ratios sqrt(41)/1 and sqrt(41)/2 -> the min is sqrt(41)/2.
    const double expect = std::sqrt(41.0) / 2.0;
    CHECK(ldcof_score(model, std::vector<double>{5.0, 4.0}) == doctest::Approx(expect));

    // Degenerate governing cluster.
    auto degenerate = toy_model();
    degenerate.avg_dist = {0.0, 0.0, 0.1};
    CHECK_THROWS_AS(ldcof_score(degenerate, std::vector<double>{0.0, 1.0}), DegenerateCluster);
}

TEST_CASE("ldcof_score: invariant under a rigid rotation of points and centroids") {
    testutil::Gen gen(0x555);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 120; ++i) {
        const double cx = (i % 3) * 8.0;
        rows.push_back({cx + gen.normal(), gen.normal()});
    }
    const auto matrix = matrix_from_rows(rows);
    LdcofConfig cfg;
    cfg.k_clusters = 3;
    cfg.seed = 9;
    const auto model = ldcof_fit(matrix, cfg);

    const double theta = 0.83;
    auto rotate = [&](double x, double y) {
        return std::pair<double, double>{x * std::cos(theta) - y * std::sin(theta),
                                         x * std::sin(theta) + y * std::cos(theta)};
    };
    auto rotated = model;
    for (std::size_t c = 0; c < model.k; ++c) {
        auto [rx, ry] = rotate(model.centroids[2 * c], model.centroids[2 * c + 1]);
        rotated.centroids[2 * c] = rx;
        rotated.centroids[2 * c + 1] = ry;
    }
    for (int trial = 0; trial < 50; ++trial) {
        const double x = gen.uniform(-5, 25), y = gen.uniform(-5, 5);
        auto [rx, ry] = rotate(x, y);
        CHECK(ldcof_score(model, std::vector<double>{x, y}) ==
              doctest::Approx(ldcof_score(rotated, std::vector<double>{rx, ry})).epsilon(1e-9));
    }
}

TEST_CASE("ldcof_detect: threshold semantics") {
    const auto matrix = matrix_from_rows({{0, 0}, {0.5, 0}, {-0.5, 0}, {10, 0}});
    auto model = toy_model();
    LdcofConfig cfg;
    cfg.k_clusters = 3;
    cfg.score_threshold = std::numeric_limits<double>::infinity();
    CHECK(ldcof_detect(model, matrix, cfg).flag_count() == 0);

    cfg.score_threshold = 1.0;
    const auto report = ldcof_detect(model, matrix, cfg);
    for (std::size_t i = 0; i < matrix.rows(); ++i)
        CHECK(report.flags[i] == (ldcof_score(model, matrix.row(i)) > 1.0 ? 1 : 0));
}

TEST_CASE("ldcof_detect: planted far outliers are all flagged under the auto threshold") {
    testutil::Gen gen(0x666);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 500; ++i) {
        const double cx = (i % 4) * 6.0;
        rows.push_back({cx + 0.8 * gen.normal(), 0.8 * gen.normal()});
    }
    std::vector<std::size_t> planted;
    for (int i = 0; i < 5; ++i) {
        planted.push_back(rows.size());
        rows.push_back({gen.uniform(-40, -30), gen.uniform(25, 35)});
    }
    const auto matrix = matrix_from_rows(rows);
    LdcofConfig cfg;
    cfg.k_clusters = 5;
    cfg.seed = 4;
    const auto model = ldcof_fit(matrix, cfg);
    const auto report = ldcof_detect(model, matrix, cfg);
    for (auto idx : planted) CHECK(report.flags[idx] == 1);

    // Brute-force scoring pass: recompute every score from the raw model.
    const double threshold = ldcof_auto_threshold(model);
    std::size_t false_positives = 0;
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        const auto point = matrix.row(i);
        double best = std::numeric_limits<double>::infinity();
        std::size_t home = 0;
        for (std::size_t c = 0; c < model.k; ++c) {
            double d2 = 0;
            for (std::size_t j = 0; j < 2; ++j) {
                const double diff = point[j] - model.centroid(c)[j];
                d2 += diff * diff;
            }
            if (d2 < best) {
                best = d2;
                home = c;
            }
        }
        double score;
        if (model.is_large(home)) {
            score = std::sqrt(best) / model.avg_dist[home];
        } else {
            score = std::numeric_limits<double>::infinity();
            for (auto c : model.large_set) {
                double d2 = 0;
                for (std::size_t j = 0; j < 2; ++j) {
                    const double diff = point[j] - model.centroid(c)[j];
                    d2 += diff * diff;
                }
                score = std::min(score, std::sqrt(d2) / model.avg_dist[c]);
            }
        }
        CHECK(report.scores[i] == doctest::Approx(score).epsilon(1e-12));
        const bool is_planted =
            std::find(planted.begin(), planted.end(), i) != planted.end();
        if (report.flags[i] && !is_planted) ++false_positives;
        CHECK(report.flags[i] == (score > threshold ? 1 : 0));
    }
    // The blobs are tight; the auto threshold should not drown in noise.
    CHECK(false_positives < 50);
}

TEST_CASE("ldcof model round-trips through the text format with identical scores") {
    testutil::Gen gen(0x777);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 90; ++i)
        rows.push_back({(i % 3) * 7.0 + gen.normal(), gen.normal(), gen.uniform(0, 1)});
    const auto matrix = matrix_from_rows(rows);
    LdcofConfig cfg;
    cfg.k_clusters = 4;
    cfg.seed = 21;
    const auto model = ldcof_fit(matrix, cfg);

    std::stringstream buffer;
    write_cluster_model(buffer, model);
    const auto reloaded = read_cluster_model(buffer);
    CHECK(reloaded.k == model.k);
    CHECK(reloaded.centroids == model.centroids);
    CHECK(reloaded.large_set == model.large_set);
    CHECK(reloaded.avg_dist == model.avg_dist);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<double> p = {gen.uniform(-2, 16), gen.normal(), gen.uniform(0, 1)};
        CHECK(ldcof_score(model, p) == ldcof_score(reloaded, p));
    }
}

}  // TEST_SUITE
