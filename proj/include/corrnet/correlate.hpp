#pragma once

#include "corrnet/ingest.hpp"
#include "corrnet/sector.hpp"

#include <array>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace corrnet {

// Dense symmetric n x n matrix labelled by tickers. Storage is full row-major
// so rows can be handed out as spans; set() writes both triangles.
class LabeledSymmetricMatrix {
public:
    LabeledSymmetricMatrix() = default;
    LabeledSymmetricMatrix(std::vector<std::string> tickers, double diagonal);

    const std::vector<std::string>& tickers() const { return tickers_; }
    std::size_t size() const { return tickers_.size(); }

    double operator()(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }
    void set(std::size_t i, std::size_t j, double v) {
        values_[i * size() + j] = v;
        values_[j * size() + i] = v;
    }
    std::span<const double> row(std::size_t i) const { return {values_.data() + i * size(), size()}; }

    // Index of a ticker, or npos.
    std::size_t index_of(std::string_view ticker) const;

    friend bool operator==(const LabeledSymmetricMatrix&, const LabeledSymmetricMatrix&) = default;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::vector<std::string> tickers_;
    std::vector<double> values_;
};

// rho_ij in [-1, 1], unit diagonal.
struct CorrelationMatrix : LabeledSymmetricMatrix {
    using LabeledSymmetricMatrix::LabeledSymmetricMatrix;
};

// d_ij = sqrt(2 (1 - rho_ij)) in [0, 2], zero diagonal.
struct DistanceMatrix : LabeledSymmetricMatrix {
    using LabeledSymmetricMatrix::LabeledSymmetricMatrix;
};

struct SectorCorrelationTable {
    std::array<std::size_t, kSectorCount> counts{};
    // values[s][t]: mean correlation over member pairs; nullopt where a cell
    // has no pairs (a diagonal cell of a sector with fewer than two members,
    // or any cell touching an empty sector).
    std::array<std::array<std::optional<double>, kSectorCount>, kSectorCount> values{};
};

// Pearson correlation of every pair of series, with population moments over
// the shared observations. Throws if a series is constant.
CorrelationMatrix pearson_matrix(const ReturnsPanel& returns);

DistanceMatrix distance_matrix(const CorrelationMatrix& corr);

// Single-entry forms of the transform and its inverse.
double correlation_distance(double rho);
double distance_to_correlation(double d);

SectorCorrelationTable sector_table(const CorrelationMatrix& corr, const SectorMap& sectors);

// Matrix CSV: header `ticker,<t1>,...,<tn>` then one row per ticker, values at
// 17 significant digits.
void write_matrix_csv(std::ostream& out, const LabeledSymmetricMatrix& m);
LabeledSymmetricMatrix parse_matrix_csv(std::istream& in);

CorrelationMatrix load_correlation_csv(const std::string& path);
DistanceMatrix load_distance_csv(const std::string& path);

// Sector table CSV: header `sector,count,<nine sector names>`; absent cells
// are empty fields.
void write_sector_table_csv(std::ostream& out, const SectorCorrelationTable& table);

}  // namespace corrnet
