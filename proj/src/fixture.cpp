#include "corrnet/fixture.hpp"

#include "corrnet/error.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include <fmt/core.h>

namespace corrnet::fixture {

namespace {

struct SectorProfile {
    const char* code;
    double market;  // loading on the common factor
    double own;     // loading on the sector factor
    int onset;      // first trading day of the decline
    double drift;   // daily log drift once declining
};

// Indexed like kAllSectors.
constexpr std::array<SectorProfile, kSectorCount> kProfiles = {{
    {"BMA", 0.50, 0.60, 120, -0.0015},
    {"CGL", 0.70, 0.50, 120, -0.0015},
    {"CGD", 0.45, 0.55, 120, -0.0015},
    {"FIN", 0.90, 0.40, 5, -0.0015},
    {"HLT", 0.30, 0.60, 180, -0.0015},
    {"IGD", 0.60, 0.55, 120, -0.0015},
    {"SRV", 0.80, 0.45, 40, -0.0015},
    {"TEC", 0.55, 0.60, 120, -0.0015},
    {"UTL", 0.20, 0.60, 180, -0.0015},
}};

// Utilities members from this index on load negatively on the market.
constexpr std::size_t kContrarianFrom = 15;
constexpr SectorProfile kContrarian{"UTL", -0.60, 0.50, 230, -0.0030};

// Portable normal deviates: mt19937_64 is fully specified, the transform is
// plain Box-Muller.
class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double theta = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Antithetic pairs: day 2k+1 mirrors day 2k.
std::vector<double> antithetic_shocks(NormalSource& rng, std::size_t days) {
    std::vector<double> z(days);
    for (std::size_t t = 0; t < days; ++t) z[t] = (t % 2 == 1) ? -z[t - 1] : rng.next();
    return z;
}

}  // namespace

Dataset generate(const Options& options) {
    std::vector<Date> calendar;
    for (Date d = options.first; d <= options.last; d = d.next_day()) {
        auto wd = d.weekday();
        if (wd != std::chrono::Saturday && wd != std::chrono::Sunday) calendar.push_back(d);
    }
    if (calendar.size() < 3) throw Error("fixture calendar is too short");
    const std::size_t days = calendar.size() - 1;  // returns per series

    NormalSource rng(options.seed);
    const auto market = antithetic_shocks(rng, days);
    std::array<std::vector<double>, kSectorCount> sector_factor;
    for (auto& f : sector_factor) f = antithetic_shocks(rng, days);

    Dataset data;
    for (Sector s : kAllSectors) {
        const auto si = index_of(s);
        for (std::size_t k = 0; k < kSectorSizes[si]; ++k) {
            const bool contrarian = s == Sector::Utilities && k >= kContrarianFrom;
            const SectorProfile& p = contrarian ? kContrarian : kProfiles[si];
            const std::string ticker = fmt::format("{}{:03d}", p.code, k + 1);
            data.sectors.assignments.emplace(ticker, s);

            const double a = p.market + 0.06 * (rng.uniform() - 0.5);
            const double b = p.own;
            const double c = std::sqrt(std::max(0.0, 1.0 - a * a - b * b));
            const auto idio = antithetic_shocks(rng, days);
            double price = 20.0 + 80.0 * rng.uniform();

            data.prices.push_back({ticker, calendar[0], std::round(price * 1e4) / 1e4});
            for (std::size_t t = 0; t < days; ++t) {
                const double drift = static_cast<int>(t) + 1 >= p.onset ? p.drift : 0.0;
                const double x =
                    drift + options.daily_vol * (a * market[t] + b * sector_factor[si][t] + c * idio[t]);
                price *= std::exp(x);
                data.prices.push_back({ticker, calendar[t + 1], std::round(price * 1e4) / 1e4});
            }
        }
    }
    return data;
}

void write_dataset(const Dataset& data, const std::string& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(std::filesystem::path(dir) / "prices.csv", std::ios::binary);
        if (!out) throw Error(fmt::format("cannot write {}/prices.csv", dir));
        out << "ticker,date,close\n";
        for (const auto& r : data.prices) out << fmt::format("{},{},{:.4f}\n", r.ticker, r.date.to_string(), r.close);
    }
    {
        std::ofstream out(std::filesystem::path(dir) / "sectors.csv", std::ios::binary);
        if (!out) throw Error(fmt::format("cannot write {}/sectors.csv", dir));
        out << "ticker,sector\n";
        for (const auto& [ticker, s] : data.sectors.assignments) out << ticker << ',' << sector_name(s) << '\n';
    }
}

}  // namespace corrnet::fixture
