#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace corrnet {

// The nine industry categories used throughout the analysis, in table order.
enum class Sector {
    BasicMaterials,
    Conglomerates,
    ConsumerGoods,
    Financial,
    Healthcare,
    IndustrialGoods,
    Services,
    Technology,
    Utilities,
};

inline constexpr std::size_t kSectorCount = 9;

inline constexpr std::array<Sector, kSectorCount> kAllSectors = {
    Sector::BasicMaterials, Sector::Conglomerates,   Sector::ConsumerGoods,
    Sector::Financial,      Sector::Healthcare,      Sector::IndustrialGoods,
    Sector::Services,       Sector::Technology,      Sector::Utilities,
};

constexpr std::size_t index_of(Sector s) { return static_cast<std::size_t>(s); }

// Display name as written in sector files, e.g. "Basic Materials".
std::string_view sector_name(Sector s);

// Exact, case-sensitive inverse of sector_name().
std::optional<Sector> sector_from_name(std::string_view name);

// ticker -> sector. Tickers are unique by construction of the map.
struct SectorMap {
    std::map<std::string, Sector, std::less<>> assignments;

    std::optional<Sector> find(std::string_view ticker) const {
        auto it = assignments.find(ticker);
        if (it == assignments.end()) return std::nullopt;
        return it->second;
    }
};

}  // namespace corrnet
