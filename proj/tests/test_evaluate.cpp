#include <doctest.h>

#include <cmath>
#include <vector>

#include "testutil.hpp"
#include "tsad/errors.hpp"
#include "tsad/evaluate.hpp"

using namespace tsad;

namespace {

AnomalyReport report_from_flags(std::vector<std::uint8_t> flags, const char* name = "test") {
    AnomalyReport r;
    r.detector = name;
    r.flags = std::move(flags);
    r.scores.assign(r.flags.size(), 0.0);
    return r;
}

}  // namespace

TEST_SUITE("evaluate") {

TEST_CASE("confusion: perfect agreement and all-quiet") {
    std::vector<std::uint8_t> labels(100, 0);
    for (int i = 0; i < 10; ++i) labels[static_cast<std::size_t>(i * 7)] = 1;
    const auto perfect = confusion(report_from_flags(labels), labels);
    CHECK(perfect.tp == 10);
    CHECK(perfect.fp == 0);
    CHECK(perfect.fn == 0);
    CHECK(perfect.tn == 90);

    const auto quiet = confusion(report_from_flags(std::vector<std::uint8_t>(100, 0)), labels);
    CHECK(quiet.tp == 0);
    CHECK(quiet.fp == 0);
    CHECK(quiet.fn == 10);

    CHECK_THROWS_AS(confusion(report_from_flags({1, 0}), labels), LengthMismatch);
}

TEST_CASE("confusion: seeded pair equals a four-way tally oracle") {
    testutil::Gen gen(0xC0);
    std::vector<std::uint8_t> flags(5000), labels(5000);
    for (std::size_t i = 0; i < flags.size(); ++i) {
        flags[i] = gen.uniform01() < 0.3 ? 1 : 0;
        labels[i] = gen.uniform01() < 0.1 ? 1 : 0;
    }
    const auto c = confusion(report_from_flags(flags), labels);
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        tp += flags[i] && labels[i];
        fp += flags[i] && !labels[i];
        fn += !flags[i] && labels[i];
        tn += !flags[i] && !labels[i];
    }
    CHECK(c.tp == tp);
    CHECK(c.fp == fp);
    CHECK(c.fn == fn);
    CHECK(c.tn == tn);
    CHECK(c.total() == flags.size());
}

TEST_CASE("metrics: reproduces every detector row reported for the synthetic set") {
    struct Row {
        std::size_t tp, fp, fn;
        double precision, recall, f1;
    };
    // (TP, FP, FN) -> percentages, 2 d.p.; the last row uses the
    // counts-derived recall 75.61 rather than the typo'd 75.69.
    const Row rows[] = {
        {32, 57, 9, 35.95, 78.04, 49.23},   // baseline
        {31, 17, 10, 64.58, 75.61, 69.66},  // online filter
        {39, 18, 2, 68.42, 95.12, 79.59},   // offline filter
        {30, 16, 11, 65.21, 73.17, 68.96},  // gaussian predictor
        {31, 14, 10, 68.88, 75.61, 72.09},  // ldcof
    };
    for (const auto& row : rows) {
        const auto m = metrics({row.tp, row.fp, row.fn, 4000});
        CHECK(std::abs(100.0 * m.precision - row.precision) <= 0.01);
        CHECK(std::abs(100.0 * m.recall - row.recall) <= 0.01);
        CHECK(std::abs(100.0 * m.f1 - row.f1) <= 0.01);
    }
}

TEST_CASE("metrics: baseline accuracy matches the reported 98.35%") {
    // 32 TP, 57 FP, 9 FN out of 1% positives: N such that (tp+tn)/N = .9835
    // with 41 positives implies N = 4000 (tn = 3902).
    const auto m = metrics({32, 57, 9, 3902});
    CHECK(std::abs(100.0 * m.accuracy - 98.35) <= 0.01);
}

TEST_CASE("metrics: zero conventions and f1 bounds") {
    const auto empty = metrics({0, 0, 0, 500});
    CHECK(empty.precision == 0.0);
    CHECK(empty.recall == 0.0);
    CHECK(empty.f1 == 0.0);
    CHECK(empty.accuracy == 1.0);

    const auto nothing = metrics({0, 0, 0, 0});
    CHECK(nothing.accuracy == 0.0);

    testutil::Gen gen(0xF1);
    for (int trial = 0; trial < 200; ++trial) {
        const ConfusionCounts c{gen.bounded(50), gen.bounded(50), gen.bounded(50),
                                gen.bounded(500)};
        const auto m = metrics(c);
        CHECK(m.f1 >= 0.0);
        CHECK(m.f1 <= 1.0);
        CHECK((m.f1 == 0.0) == (c.tp == 0));
        if (c.tp > 0) {
            CHECK(m.f1 >= std::min(m.precision, m.recall) - 1e-12);
            CHECK(m.f1 <= std::max(m.precision, m.recall) + 1e-12);
        }
    }
}

TEST_CASE("window_frequency: rates split inside vs outside the window") {
    const auto s = testutil::make_series(std::vector<double>(100, 1.0), 0, 60);
    auto flags = std::vector<std::uint8_t>(100, 0);

    const auto quiet = window_frequency(s, report_from_flags(flags), 600, 1200, 2400);
    CHECK(quiet.in_rate == 0.0);
    CHECK(quiet.out_rate == 0.0);

    for (std::size_t i = 20; i <= 40; ++i) flags[i] = 1;
    const auto inside = window_frequency(s, report_from_flags(flags), 600, 20 * 60, 40 * 60);
    CHECK(inside.out_rate == 0.0);
    CHECK(inside.in_rate == 1.0);

    CHECK_THROWS_AS(window_frequency(s, report_from_flags(flags), 600, 7000, 6000),
                    ConfigError);
    CHECK_THROWS_AS(window_frequency(s, report_from_flags(flags), 600, 0, 100 * 60),
                    EmptyRegion);
}

TEST_CASE("window_frequency: per-bin counts match a direct bucketing oracle") {
    testutil::Gen gen(0xB1);
    std::vector<std::uint8_t> flags(1440);
    for (auto& f : flags) f = gen.uniform01() < 0.05 ? 1 : 0;
    const auto s = testutil::make_series(std::vector<double>(1440, 1.0));
    const std::int64_t bin = 3600;
    const auto wf = window_frequency(s, report_from_flags(flags), bin, s.timestamps[100],
                                     s.timestamps[400]);

    std::vector<std::size_t> expect((s.timestamps.back() - s.timestamps.front()) / bin + 1, 0);
    for (std::size_t i = 0; i < flags.size(); ++i)
        if (flags[i]) ++expect[static_cast<std::size_t>((s.timestamps[i] - s.timestamps[0]) / bin)];
    CHECK(wf.bin_counts == expect);
}

TEST_CASE("fault_flag: m=1 yields one interval per flagged point") {
    const auto s = testutil::make_series(std::vector<double>(10, 1.0), 0, 600);
    std::vector<std::uint8_t> flags(10, 0);
    flags[2] = flags[7] = 1;
    const auto intervals = fault_flag(s, report_from_flags(flags), {3600, 1});
    REQUIRE(intervals.size() == 2);
    CHECK(intervals[0].start == 1200);
    CHECK(intervals[0].end == 1200);
    CHECK(intervals[0].count == 1);
    CHECK(intervals[1].start == 4200);

    CHECK(fault_flag(s, report_from_flags(std::vector<std::uint8_t>(10, 0)), {3600, 1}).empty());
}

TEST_CASE("fault_flag: seeded flags match the brute-force all-windows oracle") {
    testutil::Gen gen(0xFA);
    const std::size_t n = 2000;
    const auto s = testutil::make_series(std::vector<double>(n, 1.0));
    std::vector<std::uint8_t> flags(n);
    for (auto& f : flags) f = gen.uniform01() < 0.02 ? 1 : 0;
    const FaultPolicy policy{3600, 5};  // 60 min, 5 events
    const auto intervals = fault_flag(s, report_from_flags(flags), policy);

    // Oracle: every flagged pair (a, b) with >= m flags inside and span
    // within the interval marks [t_a, t_b]; union and coalesce.
    std::vector<Timestamp> hits;
    for (std::size_t i = 0; i < n; ++i)
        if (flags[i]) hits.push_back(s.timestamps[i]);
    std::vector<std::pair<Timestamp, Timestamp>> marked;
    for (std::size_t a = 0; a < hits.size(); ++a)
        for (std::size_t b = a; b < hits.size(); ++b) {
            if (hits[b] - hits[a] > policy.interval_seconds) break;
            if (b - a + 1 >= policy.min_events) marked.emplace_back(hits[a], hits[b]);
        }
    std::vector<std::pair<Timestamp, Timestamp>> coalesced;
    for (const auto& m : marked) {
        if (!coalesced.empty() && m.first <= coalesced.back().second)
            coalesced.back().second = std::max(coalesced.back().second, m.second);
        else
            coalesced.push_back(m);
    }
    REQUIRE(intervals.size() == coalesced.size());
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        CHECK(intervals[i].start == coalesced[i].first);
        CHECK(intervals[i].end == coalesced[i].second);
        CHECK(intervals[i].count >= policy.min_events);
    }
    // Disjointness.
    for (std::size_t i = 1; i < intervals.size(); ++i)
        CHECK(intervals[i].start > intervals[i - 1].end);
}

TEST_CASE("ensemble: single member passes through; majority needs a strict majority") {
    const auto a = report_from_flags({1, 0, 1, 0}, "a");
    const auto b = report_from_flags({1, 1, 0, 0}, "b");
    const auto c = report_from_flags({1, 1, 0, 0}, "c");

    const std::vector<AnomalyReport> solo = {a};
    CHECK(ensemble_combine(solo, VoteStrategy::majority).flags == a.flags);

    const std::vector<AnomalyReport> trio = {a, b, c};
    const auto vote = ensemble_combine(trio, VoteStrategy::majority);
    CHECK(vote.flags == std::vector<std::uint8_t>{1, 1, 0, 0});
    CHECK(vote.scores[0] == 1.0);
    CHECK(vote.scores[1] == doctest::Approx(2.0 / 3.0));

    // Identical copies reproduce the member's flags.
    const std::vector<AnomalyReport> copies = {a, a, a};
    CHECK(ensemble_combine(copies, VoteStrategy::majority).flags == a.flags);
}

TEST_CASE("ensemble: weighted vote and the arithmetic oracle") {
    const auto a = report_from_flags({1, 0}, "a");
    const auto b = report_from_flags({0, 1}, "b");
    const auto c = report_from_flags({0, 1}, "c");
    const std::vector<AnomalyReport> trio = {a, b, c};
    const std::vector<double> weights = {3.0, 1.0, 1.0};
    const auto vote = ensemble_combine(trio, VoteStrategy::weighted, weights);
    // Point 0: weight 3 of 5 > 2.5 -> flagged. Point 1: weight 2 of 5 -> not.
    CHECK(vote.flags == std::vector<std::uint8_t>{1, 0});
    CHECK(vote.scores[0] == doctest::Approx(0.6));
    CHECK(vote.scores[1] == doctest::Approx(0.4));
}

TEST_CASE("ensemble: error paths") {
    CHECK_THROWS_AS(ensemble_combine(std::vector<AnomalyReport>{}, VoteStrategy::majority),
                    EmptyEnsemble);
    const std::vector<AnomalyReport> misaligned = {report_from_flags({1, 0}),
                                                   report_from_flags({1})};
    CHECK_THROWS_AS(ensemble_combine(misaligned, VoteStrategy::majority), LengthMismatch);
    const std::vector<AnomalyReport> pair = {report_from_flags({1, 0}),
                                             report_from_flags({0, 1})};
    const std::vector<double> short_weights = {1.0};
    CHECK_THROWS_AS(ensemble_combine(pair, VoteStrategy::weighted, short_weights),
                    LengthMismatch);
    const std::vector<double> bad_weights = {1.0, -1.0};
    CHECK_THROWS_AS(ensemble_combine(pair, VoteStrategy::weighted, bad_weights),
                    NonpositiveWeights);
}

}  // TEST_SUITE
