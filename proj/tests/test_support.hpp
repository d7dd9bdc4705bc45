#pragma once

#include "corrnet/cli.hpp"
#include "corrnet/pipeline.hpp"
#include "corrnet/sector.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

namespace corrnet::testing {

struct TempDir {
    std::filesystem::path path;

    TempDir() {
        static int counter = 0;
        std::random_device rd;
        path = std::filesystem::temp_directory_path() /
               fmt::format("corrnet-test-{}-{}-{}", ::getpid(), counter++, rd());
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
    std::filesystem::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << text;
}

struct DatasetPaths {
    std::string prices;
    std::string sectors;
};

// Two tickers per sector, weekday closes from 2007-08-01 to 2007-10-31 with a
// shared factor.
inline DatasetPaths write_small_dataset(const std::filesystem::path& dir, std::uint64_t seed = 77) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, 0.01);
    std::vector<Date> dates;
    for (Date d{2007, 8, 1}; d <= Date{2007, 10, 31}; d = d.next_day()) {
        if (d.weekday() != std::chrono::Saturday && d.weekday() != std::chrono::Sunday) dates.push_back(d);
    }
    std::vector<double> market(dates.size());
    for (auto& m : market) m = z(rng);

    std::string prices = "ticker,date,close\n";
    std::string sectors = "ticker,sector\n";
    for (Sector s : kAllSectors) {
        for (int k = 0; k < 2; ++k) {
            const std::string ticker = fmt::format("S{}X{}", index_of(s), k);
            sectors += fmt::format("{},{}\n", ticker, sector_name(s));
            const double load = 0.2 + 0.1 * static_cast<double>(index_of(s));
            double p = 40.0 + 5.0 * static_cast<double>(index_of(s) + k);
            for (std::size_t t = 0; t < dates.size(); ++t) {
                if (t > 0) p *= std::exp(load * market[t] + z(rng) - 0.001 * static_cast<double>(index_of(s)));
                prices += fmt::format("{},{},{:.4f}\n", ticker, dates[t].to_string(), p);
            }
        }
    }
    write_file(dir / "prices.csv", prices);
    write_file(dir / "sectors.csv", sectors);
    return {(dir / "prices.csv").string(), (dir / "sectors.csv").string()};
}

inline RunConfig small_config(const DatasetPaths& data) {
    RunConfig cfg;
    cfg.prices_paths = {data.prices};
    cfg.sectors_path = data.sectors;
    cfg.end = Date{2007, 10, 31};
    cfg.snapshot_dates = {Date{2007, 8, 15}, Date{2007, 10, 31}};
    return cfg;
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

inline CliResult cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace corrnet::testing
