#include "corrnet/ingest.hpp"

#include "corrnet/error.hpp"
#include "csv_util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_map>

#include <fmt/core.h>

namespace corrnet {

namespace {

struct DateHash {
    std::size_t operator()(const Date& d) const noexcept {
        return std::hash<long long>{}(d.days().time_since_epoch().count());
    }
};

}  // namespace

bool is_valid_ticker(std::string_view ticker) {
    if (ticker.empty() || ticker.size() > 6) return false;
    if (ticker.front() < 'A' || ticker.front() > 'Z') return false;
    return std::all_of(ticker.begin(), ticker.end(), [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' || c == '-';
    });
}

// ---------------------------------------------------------------------------
// PricePanel

PricePanel::PricePanel(std::vector<std::string> tickers, std::vector<Date> dates,
                       std::vector<double> closes)
    : tickers_(std::move(tickers)), dates_(std::move(dates)), closes_(std::move(closes)) {
    if (closes_.size() != tickers_.size() * dates_.size()) {
        throw Error("price panel: close matrix does not match tickers x dates");
    }
    if (!std::is_sorted(tickers_.begin(), tickers_.end()) ||
        std::adjacent_find(tickers_.begin(), tickers_.end()) != tickers_.end()) {
        throw Error("price panel: tickers must be unique and sorted");
    }
    if (std::adjacent_find(dates_.begin(), dates_.end(), std::greater_equal<>{}) != dates_.end()) {
        throw Error("price panel: dates must be strictly increasing");
    }
    for (double c : closes_) {
        if (!(c > 0.0) || !std::isfinite(c)) throw Error("price panel: non-positive close");
    }
}

std::size_t PricePanel::date_index(const Date& date) const {
    auto it = std::lower_bound(dates_.begin(), dates_.end(), date);
    if (it == dates_.end() || *it != date) return npos;
    return static_cast<std::size_t>(it - dates_.begin());
}

std::vector<PriceRecord> PricePanel::to_records() const {
    std::vector<PriceRecord> out;
    out.reserve(closes_.size());
    for (std::size_t i = 0; i < tickers_.size(); ++i) {
        for (std::size_t t = 0; t < dates_.size(); ++t) {
            out.push_back({tickers_[i], dates_[t], close(i, t)});
        }
    }
    return out;
}

PricePanel PricePanel::slice(const Date& first, const Date& last) const {
    auto lo = std::lower_bound(dates_.begin(), dates_.end(), first) - dates_.begin();
    auto hi = std::upper_bound(dates_.begin(), dates_.end(), last) - dates_.begin();
    if (hi < lo) hi = lo;
    std::vector<Date> dates(dates_.begin() + lo, dates_.begin() + hi);
    std::vector<double> closes;
    closes.reserve(tickers_.size() * dates.size());
    for (std::size_t i = 0; i < tickers_.size(); ++i) {
        auto r = row(i);
        closes.insert(closes.end(), r.begin() + lo, r.begin() + hi);
    }
    return PricePanel(tickers_, std::move(dates), std::move(closes));
}

// ---------------------------------------------------------------------------
// ReturnsPanel

ReturnsPanel::ReturnsPanel(std::vector<std::string> tickers, std::vector<Date> dates,
                           std::vector<double> values)
    : tickers_(std::move(tickers)), dates_(std::move(dates)), values_(std::move(values)) {
    if (values_.size() != tickers_.size() * dates_.size()) {
        throw Error("returns panel: value matrix does not match tickers x dates");
    }
    stats_.reserve(tickers_.size());
    const double n = static_cast<double>(dates_.size());
    for (std::size_t i = 0; i < tickers_.size(); ++i) {
        auto x = series(i);
        SeriesStats s;
        if (!x.empty()) {
            double sum = 0.0;
            for (double v : x) sum += v;
            s.mean = sum / n;
            double ss = 0.0;
            for (double v : x) ss += (v - s.mean) * (v - s.mean);
            s.stddev = std::sqrt(ss / n);
        }
        stats_.push_back(s);
    }
}

// ---------------------------------------------------------------------------
// Parsing

std::vector<PriceRecord> parse_prices(std::istream& in) {
    std::vector<PriceRecord> records;
    std::unordered_map<std::string, std::unordered_map<Date, std::size_t, DateHash>> seen;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (detail::is_blank(line)) continue;
        auto fields = detail::split_csv_line(line);
        if (line_no == 1 && fields.size() == 3 && fields[0] == "ticker" && fields[1] == "date" &&
            fields[2] == "close") {
            continue;
        }
        if (fields.size() != 3) {
            throw ParseError(fmt::format("expected 3 columns, found {}, line {}", fields.size(),
                                         line_no),
                             line_no);
        }
        if (!is_valid_ticker(fields[0])) {
            throw ParseError(fmt::format("invalid ticker '{}', line {}", fields[0], line_no),
                             line_no);
        }
        auto date = Date::parse(fields[1]);
        if (!date) {
            throw ParseError(fmt::format("unparsable date '{}', line {}", fields[1], line_no),
                             line_no);
        }
        auto close = detail::parse_double(fields[2]);
        if (!close) {
            throw ParseError(fmt::format("unparsable price '{}', line {}", fields[2], line_no),
                             line_no);
        }
        if (!(*close > 0.0) || !std::isfinite(*close)) {
            throw ParseError(fmt::format("non-positive price, line {}", line_no), line_no);
        }
        auto [it, inserted] = seen[std::string(fields[0])].emplace(*date, line_no);
        if (!inserted) {
            throw ParseError(fmt::format("duplicate (ticker, date) ({}, {}), lines {} and {}",
                                         fields[0], fields[1], it->second, line_no),
                             line_no);
        }
        records.push_back({std::string(fields[0]), *date, *close});
    }
    return records;
}

std::vector<PriceRecord> load_prices(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(fmt::format("cannot open price file '{}'", path));
    try {
        return parse_prices(in);
    } catch (const ParseError& e) {
        throw ParseError(fmt::format("{}: {}", path, e.what()), e.line());
    }
}

std::vector<PriceRecord> merge_sources(std::span<const std::vector<PriceRecord>> sources) {
    std::vector<PriceRecord> merged;
    std::set<std::string, std::less<>> taken;
    for (const auto& source : sources) {
        std::set<std::string, std::less<>> here;
        for (const auto& r : source) {
            if (taken.contains(r.ticker)) continue;
            here.insert(r.ticker);
            merged.push_back(r);
        }
        taken.merge(here);
    }
    return merged;
}

SectorMap parse_sectors(std::istream& in) {
    SectorMap map;
    std::unordered_map<std::string, std::size_t> first_line;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (detail::is_blank(line)) continue;
        auto fields = detail::split_csv_line(line);
        if (line_no == 1 && fields.size() == 2 && fields[0] == "ticker" && fields[1] == "sector") {
            continue;
        }
        if (fields.size() != 2) {
            throw ParseError(fmt::format("expected 2 columns, found {}, line {}", fields.size(),
                                         line_no),
                             line_no);
        }
        if (!is_valid_ticker(fields[0])) {
            throw ParseError(fmt::format("invalid ticker '{}', line {}", fields[0], line_no),
                             line_no);
        }
        auto sector = sector_from_name(fields[1]);
        if (!sector) {
            throw ParseError(fmt::format("unknown sector '{}', line {}", fields[1], line_no),
                             line_no);
        }
        auto [it, inserted] = first_line.emplace(std::string(fields[0]), line_no);
        if (!inserted) {
            throw ParseError(fmt::format("duplicate ticker {}, lines {} and {}", fields[0],
                                         it->second, line_no),
                             line_no);
        }
        map.assignments.emplace(std::string(fields[0]), *sector);
    }
    return map;
}

SectorMap load_sectors(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(fmt::format("cannot open sector file '{}'", path));
    try {
        return parse_sectors(in);
    } catch (const ParseError& e) {
        throw ParseError(fmt::format("{}: {}", path, e.what()), e.line());
    }
}

// ---------------------------------------------------------------------------
// Alignment

AlignResult align_panel(std::span<const PriceRecord> records, const AlignPolicy& policy) {
    if (!(policy.min_coverage > 0.0) || policy.min_coverage > 1.0) {
        throw Error("alignment policy: coverage threshold must lie in (0, 1]");
    }

    std::map<std::string, std::map<Date, double>> by_ticker;
    for (const auto& r : records) {
        auto [it, inserted] = by_ticker[r.ticker].emplace(r.date, r.close);
        if (!inserted) {
            throw Error(fmt::format("duplicate (ticker, date) ({}, {})", r.ticker,
                                    r.date.to_string()));
        }
    }

    // Consensus calendar: dates held by a strict majority of tickers. A date
    // only one ticker in a pair has does not count against the other.
    std::map<Date, std::size_t> holders;
    for (const auto& [ticker, series] : by_ticker) {
        for (const auto& [date, close] : series) ++holders[date];
    }
    std::vector<Date> consensus;
    for (const auto& [date, count] : holders) {
        if (2 * count > by_ticker.size()) consensus.push_back(date);
    }

    AlignResult result;
    std::vector<const std::string*> survivors;
    for (const auto& [ticker, series] : by_ticker) {
        std::size_t covered = 0;
        for (const auto& d : consensus) covered += series.contains(d) ? 1 : 0;
        const double coverage =
            consensus.empty() ? 0.0 : static_cast<double>(covered) / static_cast<double>(consensus.size());
        if (coverage + 1e-12 < policy.min_coverage) {
            result.dropped.push_back(ticker);
        } else {
            survivors.push_back(&ticker);
        }
    }

    std::vector<Date> calendar;
    if (!survivors.empty()) {
        for (const auto& [date, close] : by_ticker.at(*survivors.front())) {
            bool everywhere = std::all_of(survivors.begin() + 1, survivors.end(),
                                          [&](const std::string* t) {
                                              return by_ticker.at(*t).contains(date);
                                          });
            if (everywhere) calendar.push_back(date);
        }
    }

    if (survivors.size() < 2 || calendar.size() < 3) {
        throw Error(fmt::format("insufficient overlap: {} ticker(s) over {} shared date(s)",
                                survivors.size(), calendar.size()));
    }

    std::vector<std::string> tickers;
    std::vector<double> closes;
    closes.reserve(survivors.size() * calendar.size());
    for (const std::string* t : survivors) {
        tickers.push_back(*t);
        const auto& series = by_ticker.at(*t);
        for (const auto& d : calendar) closes.push_back(series.at(d));
    }
    result.panel = PricePanel(std::move(tickers), std::move(calendar), std::move(closes));
    return result;
}

// ---------------------------------------------------------------------------
// Returns

ReturnsPanel log_returns(const PricePanel& panel) {
    if (panel.date_count() < 2) throw Error("log returns need at least 2 dates");
    const std::size_t width = panel.date_count() - 1;
    std::vector<double> values;
    values.reserve(panel.ticker_count() * width);
    for (std::size_t i = 0; i < panel.ticker_count(); ++i) {
        auto row = panel.row(i);
        for (std::size_t t = 1; t < row.size(); ++t) values.push_back(std::log(row[t] / row[t - 1]));
    }
    std::vector<Date> dates(panel.dates().begin() + 1, panel.dates().end());
    return ReturnsPanel(panel.tickers(), std::move(dates), std::move(values));
}

std::map<std::string, double> cumulative_return(const PricePanel& panel, const Date& baseline,
                                                const Date& at) {
    const std::size_t b = panel.date_index(baseline);
    if (b == PricePanel::npos) {
        throw Error(fmt::format("baseline date {} is not in the trading calendar", baseline.to_string()));
    }
    const std::size_t a = panel.date_index(at);
    if (a == PricePanel::npos) {
        throw Error(fmt::format("date {} is not in the trading calendar", at.to_string()));
    }
    if (a < b) {
        throw Error(fmt::format("date {} precedes baseline {}", at.to_string(), baseline.to_string()));
    }
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < panel.ticker_count(); ++i) {
        out.emplace(panel.tickers()[i], panel.close(i, a) / panel.close(i, b) - 1.0);
    }
    return out;
}

Date resolve_trading_date(const PricePanel& panel, const Date& requested, bool nearest_prior) {
    const auto& dates = panel.dates();
    auto it = std::upper_bound(dates.begin(), dates.end(), requested);
    if (it != dates.begin() && *(it - 1) == requested) return requested;
    if (!nearest_prior) {
        throw Error(fmt::format("date {} is not a trading day in the panel (use --nearest-prior to "
                                "fall back to the previous close)",
                                requested.to_string()));
    }
    if (it == dates.begin()) {
        throw Error(fmt::format("no trading day on or before {}", requested.to_string()));
    }
    return *(it - 1);
}

}  // namespace corrnet
