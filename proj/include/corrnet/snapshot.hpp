#pragma once

#include "corrnet/date.hpp"
#include "corrnet/graph.hpp"
#include "corrnet/ingest.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace corrnet {

enum class ReturnClass { Green, Yellow, Red };

std::string_view class_name(ReturnClass c);  // "green" | "yellow" | "red"

// Green: r > yellow_cutoff. Red: r < red_cutoff. Both cutoffs themselves are
// Yellow.
struct ClassThresholds {
    double red_cutoff = -0.25;
    double yellow_cutoff = -0.10;
};

struct SnapshotEntry {
    double cumulative_return = 0.0;
    ReturnClass cls = ReturnClass::Green;
};

struct SnapshotClassification {
    Date at;
    Date baseline;
    std::map<std::string, SnapshotEntry> entries;
};

struct BandSeries {
    std::string center;
    Date baseline;
    std::vector<Date> dates;
    std::vector<std::size_t> counts;                       // tickers per band
    std::vector<std::vector<std::optional<double>>> values;  // [band][date]; nullopt = empty band
};

ReturnClass classify_return(double r, const ClassThresholds& thresholds = {});

SnapshotClassification classify(const std::map<std::string, double>& returns,
                                const ClassThresholds& thresholds = {});

// Convenience: cumulative returns from `baseline` to `at`, classified.
SnapshotClassification snapshot(const PricePanel& panel, const Date& baseline, const Date& at,
                                const ClassThresholds& thresholds = {});

// Equal-weighted mean cumulative return per band at each requested date.
BandSeries band_series(const PricePanel& panel, const BandAssignment& bands, const Date& baseline,
                       std::span<const Date> dates);

// `date,band1,...,bandK`; absent bands are empty fields.
void write_band_series_csv(std::ostream& out, const BandSeries& series);

// `ticker,return,class`, sorted by ticker.
void write_snapshot_csv(std::ostream& out, const SnapshotClassification& snap);

// The six event dates used as the default snapshot list.
std::vector<Date> default_snapshot_dates();

}  // namespace corrnet
