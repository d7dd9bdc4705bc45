#pragma once

#include "corrnet/date.hpp"
#include "corrnet/ingest.hpp"
#include "corrnet/sector.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace corrnet::fixture {

// Members per sector, in kAllSectors order. Sums to 533.
inline constexpr std::array<std::size_t, kSectorCount> kSectorSizes = {61, 7, 61, 85, 49, 42, 98, 100, 30};

struct Options {
    std::uint64_t seed = 20081010;
    Date first{2007, 8, 1};
    Date last{2008, 10, 10};
    double daily_vol = 0.01;
};

struct Dataset {
    std::vector<PriceRecord> prices;  // ticker-major, weekday calendar
    SectorMap sectors;
};

// Block-structured synthetic market: a common factor plus one factor per
// sector, with Financial loading hardest on the common factor and Services
// next. Each group starts a deterministic decline at a different day, earliest
// for Financial and latest for a block of Utilities stocks that load
// negatively on the common factor. Shocks come in antithetic pairs so
// cumulative noise stays bounded and the declines dominate price paths.
Dataset generate(const Options& options = {});

// Writes prices.csv and sectors.csv into `dir` (created if needed).
void write_dataset(const Dataset& data, const std::string& dir);

}  // namespace corrnet::fixture
