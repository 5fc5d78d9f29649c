#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "testutil.hpp"
#include "tsad/errors.hpp"
#include "tsad/ingest.hpp"

using namespace tsad;

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

TEST_SUITE("ingest") {

TEST_CASE("parse: one valid row maps fields directly") {
    std::istringstream in("timestamp,sensor_id,value\n2016-10-18 00:01:00,NH4_T3,3.2\n");
    const auto readings = parse_sensor_csv(in);
    REQUIRE(readings.size() == 1);
    CHECK(readings[0].sensor_id == "NH4_T3");
    CHECK(readings[0].value == 3.2);
    CHECK(format_timestamp(readings[0].timestamp) == "2016-10-18 00:01:00");
}

TEST_CASE("parse: unparsable value raises MalformedRow with the line") {
    std::istringstream in("timestamp,sensor_id,value\n2016-10-18 00:01:00,NH4_T3,abc\n");
    CHECK_THROWS_AS(parse_sensor_csv(in), MalformedRow);
    std::istringstream again("timestamp,sensor_id,value\n2016-10-18 00:01:00,NH4_T3,abc\n");
    try {
        parse_sensor_csv(again);
    } catch (const MalformedRow& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("parse: bad timestamp, empty sensor, wrong field count") {
    std::istringstream bad_ts("timestamp,sensor_id,value\n2016-13-01 00:00:00,A,1\n");
    CHECK_THROWS_AS(parse_sensor_csv(bad_ts), MalformedRow);
    std::istringstream no_sensor("timestamp,sensor_id,value\n2016-10-18 00:01:00,,1\n");
    CHECK_THROWS_AS(parse_sensor_csv(no_sensor), MalformedRow);
    std::istringstream fields("timestamp,sensor_id,value\n2016-10-18 00:01:00,A\n");
    CHECK_THROWS_AS(parse_sensor_csv(fields), MalformedRow);
    std::istringstream header("time,id,val\n");
    CHECK_THROWS_AS(parse_sensor_csv(header), MalformedRow);
}

TEST_CASE("parse: a full day is 1440 readings in file order") {
    std::ostringstream file;
    file << "timestamp,sensor_id,value\n";
    for (int i = 0; i < 1440; ++i) {
        char ts[32];
        std::snprintf(ts, sizeof(ts), "2016-10-18 %02d:%02d:00", i / 60, i % 60);
        file << ts << ",NH4_T3," << i << "\n";
    }
    std::istringstream in(file.str());
    const auto readings = parse_sensor_csv(in);
    REQUIRE(readings.size() == 1440);
    for (int i = 0; i < 1440; ++i) CHECK(readings[static_cast<std::size_t>(i)].value == i);
}

TEST_CASE("parse: expected_sensor filters foreign rows; none surviving is EmptyInput") {
    std::istringstream in(
        "timestamp,sensor_id,value\n"
        "2016-10-18 00:01:00,O2_T3,8.1\n"
        "2016-10-18 00:01:00,NH4_T3,3.2\n");
    const auto readings = parse_sensor_csv(in, std::string("NH4_T3"));
    REQUIRE(readings.size() == 1);
    CHECK(readings[0].sensor_id == "NH4_T3");

    std::istringstream none(
        "timestamp,sensor_id,value\n2016-10-18 00:01:00,O2_T3,8.1\n");
    CHECK_THROWS_AS(parse_sensor_csv(none, std::string("NH4_T3")), EmptyInput);
}

TEST_CASE("parse: NaN token is accepted as a value") {
    std::istringstream in("timestamp,sensor_id,value\n2016-10-18 00:01:00,NH4_T3,NaN\n");
    const auto readings = parse_sensor_csv(in);
    REQUIRE(readings.size() == 1);
    CHECK(std::isnan(readings[0].value));
}

TEST_CASE("to_series rejects mixed sensors") {
    std::vector<SensorReading> readings = {{0, "A", 1.0}, {60, "B", 2.0}};
    CHECK_THROWS_AS(to_series(readings), InputError);
}

TEST_CASE("clean: the spec fixture removes one point per cause") {
    const auto s = testutil::make_series({3.1, kNaN, -0.5, 1e32, 4.0});
    const auto [cleaned, report] = clean(s, {});
    CHECK(cleaned.values == std::vector<double>{3.1, 4.0});
    CHECK(report.removed_nan == 1);
    CHECK(report.removed_negative == 1);
    CHECK(report.removed_magnitude == 1);
    CHECK(report.condensed_pairs == 0);
    // Surviving points keep their timestamps.
    CHECK(cleaned.timestamps[0] == s.timestamps[0]);
    CHECK(cleaned.timestamps[1] == s.timestamps[4]);
}

TEST_CASE("clean: all-valid series is returned unchanged") {
    const auto s = testutil::make_series({1.0, 2.0, 3.0});
    const auto [cleaned, report] = clean(s, {});
    CHECK(cleaned.values == s.values);
    CHECK(cleaned.timestamps == s.timestamps);
    CHECK(report.total_removed() == 0);
}

TEST_CASE("clean: seeded series matches an independent re-scan oracle") {
    testutil::Gen gen(0xC1EA11);
    std::vector<double> values;
    for (int i = 0; i < 2000; ++i) {
        const double roll = gen.uniform01();
        if (roll < 0.05)
            values.push_back(kNaN);
        else if (roll < 0.10)
            values.push_back(-gen.uniform(0.1, 5.0));
        else if (roll < 0.15)
            values.push_back(gen.uniform(2e6, 1e9));
        else
            values.push_back(gen.uniform(0.0, 10.0));
    }
    const auto s = testutil::make_series(values);
    const CleaningConfig cfg;
    const auto [cleaned, report] = clean(s, cfg);

    // Oracle: one independent pass applying the three predicates in order.
    std::vector<double> survivors;
    std::size_t nan = 0, neg = 0, mag = 0;
    for (double v : values) {
        if (std::isnan(v) || std::isinf(v))
            ++nan;
        else if (v < 0)
            ++neg;
        else if (std::abs(v) > cfg.magnitude_cutoff)
            ++mag;
        else
            survivors.push_back(v);
    }
    CHECK(cleaned.values == survivors);
    CHECK(report.removed_nan == nan);
    CHECK(report.removed_negative == neg);
    CHECK(report.removed_magnitude == mag);
    CHECK(report.total_removed() == s.size() - cleaned.size());

    // Idempotence: cleaning the cleaned series changes nothing.
    const auto [twice, report2] = clean(cleaned, cfg);
    CHECK(twice.values == cleaned.values);
    CHECK(twice.timestamps == cleaned.timestamps);
    CHECK(report2.total_removed() == 0);
}

TEST_CASE("clean: report text block has the four key=value lines") {
    CleaningReport r;
    r.removed_nan = 3;
    r.removed_negative = 1;
    CHECK(r.to_text() ==
          "removed_nan=3\nremoved_negative=1\nremoved_magnitude=0\ncondensed_pairs=0\n");
}

TEST_CASE("condense_dst: no duplicates is the identity") {
    const auto s = testutil::make_series({1.0, 2.0, 3.0});
    const auto [out, report] = condense_dst(s);
    CHECK(out.values == s.values);
    CHECK(out.timestamps == s.timestamps);
    CHECK(report.condensed_pairs == 0);
}

TEST_CASE("condense_dst: a duplicated pair averages to one point") {
    TimeSeries s;
    s.sensor_id = "NH4_T3";
    s.push_back(600, 4.0);
    s.push_back(600, 6.0);
    const auto [out, report] = condense_dst(s);
    REQUIRE(out.size() == 1);
    CHECK(out.values[0] == 5.0);
    CHECK(out.timestamps[0] == 600);
    CHECK(report.condensed_pairs == 1);
}

TEST_CASE("condense_dst: the repeated 2:00-3:00 hour condenses 120 points into 60") {
    // The set-back: minutes 02:00..02:59 recorded twice, then 03:00 onward.
    TimeSeries s;
    s.sensor_id = "NH4_T3";
    const auto base = *parse_timestamp("2016-10-31 01:58:00");
    s.push_back(base, -2.0);
    s.push_back(base + 60, -1.0);
    const auto two_am = base + 120;
    for (int pass = 0; pass < 2; ++pass)
        for (int m = 0; m < 60; ++m)
            s.push_back(two_am + 60 * m, static_cast<double>(pass * 60 + m));
    s.push_back(two_am + 3600, 999.0);

    const auto [out, report] = condense_dst(s);
    CHECK(report.condensed_pairs == 60);
    REQUIRE(out.size() == 2 + 60 + 1);
    CHECK(out.strictly_increasing());
    // Each condensed point is the mean of one consecutive input pair.
    for (int p = 0; p < 60; ++p) {
        const double a = s.values[2 + 2 * p];
        const double b = s.values[2 + 2 * p + 1];
        CHECK(out.values[static_cast<std::size_t>(2 + p)] == 0.5 * (a + b));
        CHECK(out.timestamps[static_cast<std::size_t>(2 + p)] == two_am + 60 * p);
    }
    CHECK(out.values.back() == 999.0);
}

TEST_CASE("condense_dst: odd duplicated span raises OddSpan") {
    TimeSeries s;
    s.push_back(0, 1.0);
    s.push_back(60, 2.0);
    s.push_back(60, 3.0);
    s.push_back(60, 4.0);
    CHECK_THROWS_AS(condense_dst(s), OddSpan);
}

TEST_CASE("pipeline determinism: identical bytes give identical series") {
    std::ostringstream file;
    file << "timestamp,sensor_id,value\n";
    testutil::Gen gen(7);
    for (int i = 0; i < 500; ++i) {
        char ts[32];
        std::snprintf(ts, sizeof(ts), "2016-10-18 %02d:%02d:00", i / 60, i % 60);
        file << ts << ",NH4_T3," << gen.uniform(0.0, 8.0) << "\n";
    }
    const std::string bytes = file.str();

    auto run = [&]() {
        std::istringstream in(bytes);
        auto series = to_series(parse_sensor_csv(in));
        auto [cleaned, r1] = clean(series, {});
        auto [condensed, r2] = condense_dst(cleaned);
        return condensed;
    };
    const auto a = run();
    const auto b = run();
    CHECK(a.values == b.values);
    CHECK(a.timestamps == b.timestamps);
}

}  // TEST_SUITE
