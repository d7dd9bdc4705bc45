#include "corrnet/snapshot.hpp"

#include "corrnet/error.hpp"
#include "csv_util.hpp"

#include <fmt/core.h>

namespace corrnet {

std::string_view class_name(ReturnClass c) {
    switch (c) {
        case ReturnClass::Green: return "green";
        case ReturnClass::Yellow: return "yellow";
        case ReturnClass::Red: return "red";
    }
    return "green";
}

ReturnClass classify_return(double r, const ClassThresholds& thresholds) {
    if (r > thresholds.yellow_cutoff) return ReturnClass::Green;
    if (r < thresholds.red_cutoff) return ReturnClass::Red;
    return ReturnClass::Yellow;
}

SnapshotClassification classify(const std::map<std::string, double>& returns,
                                const ClassThresholds& thresholds) {
    if (!(thresholds.red_cutoff < thresholds.yellow_cutoff)) {
        throw Error(fmt::format("thresholds must satisfy red < yellow (got {} and {})", thresholds.red_cutoff,
                                thresholds.yellow_cutoff));
    }
    SnapshotClassification out;
    for (const auto& [ticker, r] : returns) out.entries.emplace(ticker, SnapshotEntry{r, classify_return(r, thresholds)});
    return out;
}

SnapshotClassification snapshot(const PricePanel& panel, const Date& baseline, const Date& at,
                                const ClassThresholds& thresholds) {
    auto out = classify(cumulative_return(panel, baseline, at), thresholds);
    out.at = at;
    out.baseline = baseline;
    return out;
}

BandSeries band_series(const PricePanel& panel, const BandAssignment& bands, const Date& baseline,
                       std::span<const Date> dates) {
    const std::size_t b = panel.date_index(baseline);
    if (b == PricePanel::npos) {
        throw Error(fmt::format("baseline date {} is not in the trading calendar", baseline.to_string()));
    }
    std::vector<std::size_t> at;
    for (const auto& d : dates) {
        const std::size_t k = panel.date_index(d);
        if (k == PricePanel::npos) throw Error(fmt::format("date {} is not in the trading calendar", d.to_string()));
        if (k < b) throw Error(fmt::format("date {} precedes baseline {}", d.to_string(), baseline.to_string()));
        at.push_back(k);
    }

    // Rows of each band's members, in assignment order.
    std::vector<std::vector<std::size_t>> members(bands.band_count);
    for (std::size_t i = 0; i < bands.tickers.size(); ++i) {
        const auto& t = bands.tickers[i];
        auto it = std::lower_bound(panel.tickers().begin(), panel.tickers().end(), t);
        if (it == panel.tickers().end() || *it != t) {
            throw Error(fmt::format("ticker {} has no prices in the panel", t));
        }
        if (bands.bands[i] < 1 || bands.bands[i] > bands.band_count) {
            throw Error(fmt::format("ticker {} has band index {} outside 1..{}", t, bands.bands[i], bands.band_count));
        }
        members[bands.bands[i] - 1].push_back(static_cast<std::size_t>(it - panel.tickers().begin()));
    }

    BandSeries out;
    out.center = bands.center;
    out.baseline = baseline;
    out.dates.assign(dates.begin(), dates.end());
    out.values.assign(bands.band_count, std::vector<std::optional<double>>(dates.size()));
    for (std::size_t band = 0; band < bands.band_count; ++band) {
        out.counts.push_back(members[band].size());
        if (members[band].empty()) continue;
        for (std::size_t d = 0; d < at.size(); ++d) {
            double sum = 0.0;
            for (std::size_t row : members[band]) sum += panel.close(row, at[d]) / panel.close(row, b) - 1.0;
            out.values[band][d] = sum / static_cast<double>(members[band].size());
        }
    }
    return out;
}

void write_band_series_csv(std::ostream& out, const BandSeries& series) {
    out << "date";
    for (std::size_t k = 1; k <= series.values.size(); ++k) out << ",band" << k;
    out << '\n';
    for (std::size_t d = 0; d < series.dates.size(); ++d) {
        out << series.dates[d].to_string();
        for (const auto& band : series.values) {
            out << ',';
            if (band[d]) out << detail::format_exact(*band[d]);
        }
        out << '\n';
    }
}

void write_snapshot_csv(std::ostream& out, const SnapshotClassification& snap) {
    out << "ticker,return,class\n";
    for (const auto& [ticker, e] : snap.entries) {
        out << ticker << ',' << detail::format_exact(e.cumulative_return) << ',' << class_name(e.cls) << '\n';
    }
}

std::vector<Date> default_snapshot_dates() {
    return {
        Date{2007, 8, 10},  // mortgage-backed securities turmoil
        Date{2007, 9, 14},  // Northern Rock
        Date{2008, 1, 17},  // January 2008 turbulence
        Date{2008, 3, 17},  // Bear Stearns
        Date{2008, 9, 15},  // Lehman Brothers
        Date{2008, 10, 10}, // end of the worst week for the Dow
    };
}

}  // namespace corrnet
