#include "corrnet/sector.hpp"

namespace corrnet {

namespace {

constexpr std::array<std::string_view, kSectorCount> kNames = {
    "Basic Materials", "Conglomerates", "Consumer Goods", "Financial", "Healthcare",
    "Industrial Goods", "Services", "Technology", "Utilities",
};

}  // namespace

std::string_view sector_name(Sector s) { return kNames[index_of(s)]; }

std::optional<Sector> sector_from_name(std::string_view name) {
    for (Sector s : kAllSectors) {
        if (kNames[index_of(s)] == name) return s;
    }
    return std::nullopt;
}

}  // namespace corrnet
