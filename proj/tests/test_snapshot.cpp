#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corrnet/error.hpp"
#include "corrnet/snapshot.hpp"

#include <random>
#include <sstream>

using namespace corrnet;

namespace {

int severity(ReturnClass c) {
    switch (c) {
        case ReturnClass::Green: return 0;
        case ReturnClass::Yellow: return 1;
        case ReturnClass::Red: return 2;
    }
    return -1;
}

std::vector<Date> weekdays(std::size_t n) {
    std::vector<Date> out;
    for (Date d{2007, 8, 1}; out.size() < n; d = d.next_day()) {
        if (d.weekday() != std::chrono::Saturday && d.weekday() != std::chrono::Sunday) out.push_back(d);
    }
    return out;
}

BandAssignment assign(std::vector<std::string> tickers, std::vector<std::size_t> bands) {
    BandAssignment b;
    b.center = "HUB";
    b.tickers = std::move(tickers);
    b.bands = std::move(bands);
    b.distances.assign(b.tickers.size(), 1.0);
    return b;
}

}  // namespace

TEST_CASE("classification boundaries") {
    CHECK(classify_return(-0.09) == ReturnClass::Green);
    CHECK(classify_return(-0.10) == ReturnClass::Yellow);
    CHECK(classify_return(-0.25) == ReturnClass::Yellow);
    CHECK(classify_return(-0.26) == ReturnClass::Red);
    CHECK(classify_return(0.5) == ReturnClass::Green);
}

TEST_CASE("classify partitions and is monotone") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-0.6, 0.3);
    std::map<std::string, double> returns;
    for (int k = 0; k < 1000; ++k) returns.emplace("T" + std::to_string(k), u(rng));
    auto snap = classify(returns);
    CHECK(snap.entries.size() == returns.size());
    for (const auto& [t1, e1] : snap.entries) {
        const auto& e2 = snap.entries.at("T" + std::to_string(rng() % 1000));
        if (e1.cumulative_return <= e2.cumulative_return) CHECK(severity(e1.cls) >= severity(e2.cls));
    }
    CHECK_THROWS(classify(returns, ClassThresholds{-0.1, -0.25}));
}

TEST_CASE("custom thresholds") {
    ClassThresholds t{-0.5, -0.2};
    CHECK(classify_return(-0.15, t) == ReturnClass::Green);
    CHECK(classify_return(-0.5, t) == ReturnClass::Yellow);
    CHECK(classify_return(-0.51, t) == ReturnClass::Red);
}

TEST_CASE("band series: flat prices give zero returns") {
    auto dates = weekdays(4);
    PricePanel panel({"A", "B", "HUB"}, dates, std::vector<double>(12, 50.0));
    auto series = band_series(panel, assign({"A", "B"}, {1, 3}), dates[0], dates);
    REQUIRE(series.values.size() == 5);
    for (std::size_t d = 0; d < dates.size(); ++d) {
        CHECK(*series.values[0][d] == 0.0);
        CHECK(*series.values[2][d] == 0.0);
        CHECK_FALSE(series.values[1][d].has_value());
    }
    CHECK(series.counts == std::vector<std::size_t>{1, 0, 1, 0, 0});
}

TEST_CASE("band series: two-member mean") {
    auto dates = weekdays(2);
    PricePanel panel({"A", "B", "HUB"}, dates, {100, 90, 100, 70, 10, 10});
    auto series = band_series(panel, assign({"A", "B"}, {2, 2}), dates[0], std::vector<Date>{dates[1]});
    CHECK(*series.values[1][0] == doctest::Approx(-0.2).epsilon(1e-15));
}

TEST_CASE("band series matches per-band cumulative return means") {
    std::mt19937_64 rng(6);
    auto dates = weekdays(10);
    std::vector<std::string> tickers;
    std::vector<double> closes;
    for (int i = 0; i < 12; ++i) {
        tickers.push_back("S" + std::string(1, static_cast<char>('A' + i)));
        for (std::size_t t = 0; t < dates.size(); ++t) closes.push_back(std::uniform_real_distribution<double>(5, 100)(rng));
    }
    PricePanel panel(tickers, dates, closes);
    std::vector<std::size_t> bands;
    for (int i = 0; i < 12; ++i) bands.push_back(1 + static_cast<std::size_t>(i % 4));
    auto assignment = assign(tickers, bands);
    for (std::size_t at = 0; at < dates.size(); ++at) {
        auto series = band_series(panel, assignment, dates[0], std::vector<Date>{dates[at]});
        auto returns = cumulative_return(panel, dates[0], dates[at]);
        for (std::size_t b = 0; b < 4; ++b) {
            double sum = 0.0;
            int count = 0;
            for (int i = 0; i < 12; ++i) {
                if (bands[i] == b + 1) {
                    sum += returns.at(tickers[i]);
                    ++count;
                }
            }
            CHECK(*series.values[b][0] == doctest::Approx(sum / count).epsilon(1e-14));
        }
        CHECK_FALSE(series.values[4][0].has_value());
    }
}

TEST_CASE("common price scale leaves snapshots and band series unchanged") {
    std::mt19937_64 rng(12);
    auto dates = weekdays(8);
    std::vector<std::string> tickers{"A", "B", "C", "D"};
    std::vector<double> closes, scaled;
    for (int k = 0; k < 32; ++k) closes.push_back(std::uniform_real_distribution<double>(5, 100)(rng));
    for (double c : closes) scaled.push_back(c * 8.0);  // power of two: exact scaling
    PricePanel p1(tickers, dates, closes), p2(tickers, dates, scaled);
    auto a = assign({"A", "B", "C"}, {1, 2, 5});
    for (const auto& d : dates) {
        auto s1 = snapshot(p1, dates[0], d), s2 = snapshot(p2, dates[0], d);
        for (const auto& [t, e] : s1.entries) {
            CHECK(e.cls == s2.entries.at(t).cls);
            CHECK(e.cumulative_return == s2.entries.at(t).cumulative_return);
        }
    }
    auto b1 = band_series(p1, a, dates[0], dates), b2 = band_series(p2, a, dates[0], dates);
    CHECK(b1.values == b2.values);

    // Non power-of-two scale: same classes, returns equal to rounding.
    std::vector<double> odd;
    for (double c : closes) odd.push_back(c * 3.7);
    PricePanel p3(tickers, dates, odd);
    for (const auto& d : dates) {
        auto s1 = snapshot(p1, dates[0], d), s3 = snapshot(p3, dates[0], d);
        for (const auto& [t, e] : s1.entries) {
            CHECK(e.cumulative_return == doctest::Approx(s3.entries.at(t).cumulative_return).epsilon(1e-12));
        }
    }
}

TEST_CASE("inner band falls first in a staged-decline fixture") {
    // Inner ticker loses 2% per day from day 1, outer ticker 2% per day from
    // day 6. Cumulative returns are 0.98^k - 1; -0.10 is first passed at k = 6
    // (0.98^6 = 0.886) for the inner ticker and at k = 11 for the outer one.
    auto dates = weekdays(15);
    std::vector<double> closes;
    for (std::size_t t = 0; t < dates.size(); ++t) closes.push_back(50.0);  // hub
    for (std::size_t t = 0; t < dates.size(); ++t) closes.push_back(100.0 * std::pow(0.98, static_cast<double>(t)));
    for (std::size_t t = 0; t < dates.size(); ++t) {
        closes.push_back(100.0 * std::pow(0.98, static_cast<double>(t < 5 ? 0 : t - 5)));
    }
    PricePanel panel({"HUB", "IN", "OUT"}, dates, closes);
    auto series = band_series(panel, assign({"IN", "OUT"}, {1, 5}), dates[0], dates);
    auto first_below = [&](std::size_t band) {
        for (std::size_t d = 0; d < dates.size(); ++d)
            if (*series.values[band][d] < -0.10) return d;
        return dates.size();
    };
    CHECK(first_below(0) == 6);
    CHECK(first_below(4) == 11);
}

TEST_CASE("band series errors") {
    auto dates = weekdays(3);
    PricePanel panel({"A", "B"}, dates, {1, 2, 3, 4, 5, 6});
    CHECK_THROWS(band_series(panel, assign({"A"}, {1}), Date{2007, 8, 4}, dates));
    CHECK_THROWS(band_series(panel, assign({"Q"}, {1}), dates[0], dates));
}

TEST_CASE("CSV writers") {
    auto dates = weekdays(2);
    PricePanel panel({"A", "B", "HUB"}, dates, {100, 75, 100, 95, 10, 10});
    std::ostringstream snap;
    write_snapshot_csv(snap, snapshot(panel, dates[0], dates[1]));
    CHECK(snap.str() == "ticker,return,class\nA,-0.25,yellow\nB,-0.050000000000000044,green\nHUB,0,green\n");

    std::ostringstream bs;
    write_band_series_csv(bs, band_series(panel, assign({"A"}, {2}), dates[0], dates));
    CHECK(bs.str() == "date,band1,band2,band3,band4,band5\n2007-08-01,,0,,,\n2007-08-02,,-0.25,,,\n");
}

TEST_CASE("default snapshot dates") {
    auto d = default_snapshot_dates();
    REQUIRE(d.size() == 6);
    CHECK(d.front() == Date{2007, 8, 10});
    CHECK(d[4] == Date{2008, 9, 15});
    CHECK(d.back() == Date{2008, 10, 10});
}
