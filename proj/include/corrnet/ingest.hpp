#pragma once

#include "corrnet/date.hpp"
#include "corrnet/sector.hpp"

#include <cstddef>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace corrnet {

struct PriceRecord {
    std::string ticker;
    Date date;
    double close = 0.0;

    friend bool operator==(const PriceRecord&, const PriceRecord&) = default;
};

// Dense tickers x dates matrix of closing prices. Tickers are unique and
// sorted, dates strictly increasing, every cell is a positive price.
class PricePanel {
public:
    PricePanel() = default;
    PricePanel(std::vector<std::string> tickers, std::vector<Date> dates,
               std::vector<double> closes);

    const std::vector<std::string>& tickers() const { return tickers_; }
    const std::vector<Date>& dates() const { return dates_; }

    std::size_t ticker_count() const { return tickers_.size(); }
    std::size_t date_count() const { return dates_.size(); }

    double close(std::size_t ticker, std::size_t date) const {
        return closes_[ticker * dates_.size() + date];
    }
    std::span<const double> row(std::size_t ticker) const {
        return {closes_.data() + ticker * dates_.size(), dates_.size()};
    }

    // Index of `date` in the calendar, or npos.
    std::size_t date_index(const Date& date) const;

    // Flatten back to records, ticker-major. Useful for re-alignment and export.
    std::vector<PriceRecord> to_records() const;

    // Keep only dates in [first, last].
    PricePanel slice(const Date& first, const Date& last) const;

    friend bool operator==(const PricePanel&, const PricePanel&) = default;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::vector<std::string> tickers_;
    std::vector<Date> dates_;
    std::vector<double> closes_;
};

struct AlignPolicy {
    // Fraction of the consensus calendar a ticker must cover to survive.
    double min_coverage = 1.0;
};

struct AlignResult {
    PricePanel panel;
    std::vector<std::string> dropped;  // sorted
};

// Per-series moments of the log-returns (population standard deviation).
struct SeriesStats {
    double mean = 0.0;
    double stddev = 0.0;
};

// Daily log-returns, tickers x (dates - 1). dates()[k] is the day the k-th
// return ends on.
class ReturnsPanel {
public:
    ReturnsPanel() = default;
    ReturnsPanel(std::vector<std::string> tickers, std::vector<Date> dates,
                 std::vector<double> values);

    const std::vector<std::string>& tickers() const { return tickers_; }
    const std::vector<Date>& dates() const { return dates_; }
    const std::vector<SeriesStats>& stats() const { return stats_; }

    std::size_t ticker_count() const { return tickers_.size(); }
    std::size_t observation_count() const { return dates_.size(); }

    std::span<const double> series(std::size_t ticker) const {
        return {values_.data() + ticker * dates_.size(), dates_.size()};
    }

private:
    std::vector<std::string> tickers_;
    std::vector<Date> dates_;
    std::vector<double> values_;
    std::vector<SeriesStats> stats_;
};

// Reads the `ticker,date,close` format. The header line is optional; line
// numbers in errors are physical lines of the stream. Blank lines are skipped.
std::vector<PriceRecord> parse_prices(std::istream& in);
std::vector<PriceRecord> load_prices(const std::string& path);

// Merges price lists from several sources. A ticker present in more than one
// source is taken from the first source that lists it.
std::vector<PriceRecord> merge_sources(std::span<const std::vector<PriceRecord>> sources);

// Reads the `ticker,sector` format (header optional).
SectorMap parse_sectors(std::istream& in);
SectorMap load_sectors(const std::string& path);

AlignResult align_panel(std::span<const PriceRecord> records, const AlignPolicy& policy = {});

ReturnsPanel log_returns(const PricePanel& panel);

// close(at) / close(baseline) - 1 per ticker.
std::map<std::string, double> cumulative_return(const PricePanel& panel, const Date& baseline,
                                                const Date& at);

// Resolves a requested date against the panel calendar. With `nearest_prior`
// a missing date falls back to the latest earlier trading date; otherwise a
// missing date is an error.
Date resolve_trading_date(const PricePanel& panel, const Date& requested, bool nearest_prior);

bool is_valid_ticker(std::string_view ticker);

}  // namespace corrnet
