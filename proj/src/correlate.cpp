#include "corrnet/correlate.hpp"

#include "corrnet/error.hpp"
#include "csv_util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/core.h>

namespace corrnet {

LabeledSymmetricMatrix::LabeledSymmetricMatrix(std::vector<std::string> tickers, double diagonal)
    : tickers_(std::move(tickers)), values_(tickers_.size() * tickers_.size(), 0.0) {
    for (std::size_t i = 0; i < size(); ++i) values_[i * size() + i] = diagonal;
}

std::size_t LabeledSymmetricMatrix::index_of(std::string_view ticker) const {
    auto it = std::lower_bound(tickers_.begin(), tickers_.end(), ticker);
    if (it != tickers_.end() && *it == ticker) return static_cast<std::size_t>(it - tickers_.begin());
    // Matrices read from disk are not required to be sorted.
    it = std::find(tickers_.begin(), tickers_.end(), ticker);
    return it == tickers_.end() ? npos : static_cast<std::size_t>(it - tickers_.begin());
}

CorrelationMatrix pearson_matrix(const ReturnsPanel& returns) {
    const std::size_t n = returns.ticker_count();
    const std::size_t obs = returns.observation_count();
    if (obs < 3) throw Error(fmt::format("correlation needs at least 3 observations, got {}", obs));

    std::vector<double> centered(n * obs);
    for (std::size_t i = 0; i < n; ++i) {
        auto x = returns.series(i);
        if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); }) ||
            returns.stats()[i].stddev == 0.0) {
            throw Error(fmt::format("zero-variance return series for {}: correlation undefined",
                                    returns.tickers()[i]));
        }
        const double mu = returns.stats()[i].mean;
        for (std::size_t t = 0; t < obs; ++t) centered[i * obs + t] = x[t] - mu;
    }

    CorrelationMatrix corr(returns.tickers(), 1.0);
    const double count = static_cast<double>(obs);
    for (std::size_t i = 0; i < n; ++i) {
        const double* xi = centered.data() + i * obs;
        const double si = returns.stats()[i].stddev;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double* xj = centered.data() + j * obs;
            double acc = 0.0;
            for (std::size_t t = 0; t < obs; ++t) acc += xi[t] * xj[t];
            const double rho = acc / (count * si * returns.stats()[j].stddev);
            corr.set(i, j, std::clamp(rho, -1.0, 1.0));
        }
    }
    return corr;
}

double correlation_distance(double rho) {
    return std::sqrt(2.0 * (1.0 - std::clamp(rho, -1.0, 1.0)));
}

double distance_to_correlation(double d) { return 1.0 - d * d / 2.0; }

DistanceMatrix distance_matrix(const CorrelationMatrix& corr) {
    DistanceMatrix dist(corr.tickers(), 0.0);
    for (std::size_t i = 0; i < corr.size(); ++i) {
        for (std::size_t j = i + 1; j < corr.size(); ++j) dist.set(i, j, correlation_distance(corr(i, j)));
    }
    return dist;
}

SectorCorrelationTable sector_table(const CorrelationMatrix& corr, const SectorMap& sectors) {
    std::vector<std::size_t> member_of(corr.size());
    SectorCorrelationTable table;
    for (std::size_t i = 0; i < corr.size(); ++i) {
        auto s = sectors.find(corr.tickers()[i]);
        if (!s) throw Error(fmt::format("ticker {} has no sector assignment", corr.tickers()[i]));
        member_of[i] = index_of(*s);
        ++table.counts[member_of[i]];
    }

    std::array<std::array<double, kSectorCount>, kSectorCount> sum{};
    std::array<std::array<std::size_t, kSectorCount>, kSectorCount> pairs{};
    for (std::size_t i = 0; i < corr.size(); ++i) {
        for (std::size_t j = i + 1; j < corr.size(); ++j) {
            auto a = member_of[i];
            auto b = member_of[j];
            if (a > b) std::swap(a, b);
            sum[a][b] += corr(i, j);
            ++pairs[a][b];
        }
    }
    for (std::size_t a = 0; a < kSectorCount; ++a) {
        for (std::size_t b = a; b < kSectorCount; ++b) {
            if (pairs[a][b] == 0) continue;
            const double mean = sum[a][b] / static_cast<double>(pairs[a][b]);
            table.values[a][b] = mean;
            table.values[b][a] = mean;
        }
    }
    return table;
}

void write_matrix_csv(std::ostream& out, const LabeledSymmetricMatrix& m) {
    out << "ticker";
    for (const auto& t : m.tickers()) out << ',' << t;
    out << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << m.tickers()[i];
        for (double v : m.row(i)) out << ',' << detail::format_exact(v);
        out << '\n';
    }
}

LabeledSymmetricMatrix parse_matrix_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> tickers;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (detail::is_blank(line)) continue;
        auto fields = detail::split_csv_line(line);
        if (tickers.empty()) {
            if (fields.empty() || fields[0] != "ticker" || fields.size() < 2) {
                throw ParseError(fmt::format("matrix header must start with 'ticker', line {}", line_no),
                                 line_no);
            }
            for (std::size_t k = 1; k < fields.size(); ++k) tickers.emplace_back(fields[k]);
            continue;
        }
        if (fields.size() != tickers.size() + 1) {
            throw ParseError(fmt::format("expected {} columns, found {}, line {}", tickers.size() + 1,
                                         fields.size(), line_no),
                             line_no);
        }
        const std::size_t r = rows.size();
        if (r >= tickers.size() || fields[0] != tickers[r]) {
            throw ParseError(fmt::format("row label '{}' does not match header order, line {}",
                                         fields[0], line_no),
                             line_no);
        }
        std::vector<double> row;
        for (std::size_t k = 1; k < fields.size(); ++k) {
            auto v = detail::parse_double(fields[k]);
            if (!v || !std::isfinite(*v)) {
                throw ParseError(fmt::format("unparsable value '{}', line {}", fields[k], line_no), line_no);
            }
            row.push_back(*v);
        }
        rows.push_back(std::move(row));
    }
    if (tickers.empty()) throw ParseError("empty matrix file", 0);
    if (rows.size() != tickers.size()) {
        throw ParseError(fmt::format("matrix has {} rows for {} tickers", rows.size(), tickers.size()), 0);
    }
    LabeledSymmetricMatrix m(tickers, 0.0);
    for (std::size_t i = 0; i < tickers.size(); ++i) {
        for (std::size_t j = i; j < tickers.size(); ++j) {
            if (rows[i][j] != rows[j][i]) {
                throw ParseError(fmt::format("matrix is not symmetric at ({}, {})", tickers[i], tickers[j]), 0);
            }
            m.set(i, j, rows[i][j]);
        }
    }
    return m;
}

namespace {

LabeledSymmetricMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(fmt::format("cannot open matrix file '{}'", path));
    try {
        return parse_matrix_csv(in);
    } catch (const ParseError& e) {
        throw ParseError(fmt::format("{}: {}", path, e.what()), e.line());
    }
}

}  // namespace

CorrelationMatrix load_correlation_csv(const std::string& path) {
    auto m = load_matrix(path);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m(i, i) != 1.0) throw Error(fmt::format("{}: correlation diagonal must be 1", path));
        for (double v : m.row(i)) {
            if (v < -1.0 || v > 1.0) throw Error(fmt::format("{}: correlation outside [-1, 1]", path));
        }
    }
    CorrelationMatrix corr;
    static_cast<LabeledSymmetricMatrix&>(corr) = std::move(m);
    return corr;
}

DistanceMatrix load_distance_csv(const std::string& path) {
    auto m = load_matrix(path);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m(i, i) != 0.0) throw Error(fmt::format("{}: distance diagonal must be 0", path));
        for (double v : m.row(i)) {
            if (v < 0.0 || v > 2.0 + 1e-9) throw Error(fmt::format("{}: distance outside [0, 2]", path));
        }
    }
    DistanceMatrix dist;
    static_cast<LabeledSymmetricMatrix&>(dist) = std::move(m);
    return dist;
}

void write_sector_table_csv(std::ostream& out, const SectorCorrelationTable& table) {
    out << "sector,count";
    for (Sector s : kAllSectors) out << ',' << sector_name(s);
    out << '\n';
    for (Sector s : kAllSectors) {
        const auto a = index_of(s);
        out << sector_name(s) << ',' << table.counts[a];
        for (std::size_t b = 0; b < kSectorCount; ++b) {
            out << ',';
            if (table.values[a][b]) out << detail::format_exact(*table.values[a][b]);
        }
        out << '\n';
    }
}

}  // namespace corrnet
