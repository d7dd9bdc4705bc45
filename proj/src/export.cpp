#include "corrnet/export.hpp"

#include "corrnet/error.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/core.h>

namespace corrnet {

namespace {

std::string quoted(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string_view sector_color(Sector s) {
    switch (s) {
        case Sector::Financial: return "green";
        case Sector::Services: return "orange";
        case Sector::Healthcare: return "red";
        case Sector::Utilities: return "grey";
        case Sector::Technology: return "yellow";
        case Sector::BasicMaterials: return "black";
        case Sector::Conglomerates: return "purple";
        case Sector::ConsumerGoods: return "blue";
        case Sector::IndustrialGoods: return "brown";
    }
    return "white";
}

std::string_view class_color(ReturnClass c) {
    // The class names double as colour keywords.
    return class_name(c);
}

ColorMap sector_colors(const SectorMap& sectors) {
    ColorMap out;
    for (const auto& [ticker, s] : sectors.assignments) out.emplace(ticker, sector_color(s));
    return out;
}

ColorMap class_colors(const SnapshotClassification& snap) {
    ColorMap out;
    for (const auto& [ticker, e] : snap.entries) out.emplace(ticker, class_color(e.cls));
    return out;
}

std::string to_dot(const SpanningTree& tree, const ColorMap& colors, const ColorMap& labels) {
    const auto& nodes = tree.nodes();
    std::vector<std::size_t> order(nodes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return nodes[l] < nodes[r]; });

    std::string out = "graph corrnet {\n";
    for (std::size_t i : order) {
        auto color = colors.find(nodes[i]);
        if (color == colors.end()) throw Error(fmt::format("no colour assigned to {}", nodes[i]));
        auto label = labels.find(nodes[i]);
        const std::string_view text = label == labels.end() ? std::string_view{nodes[i]} : label->second;
        out += fmt::format("  {} [label={}, style=filled, fillcolor={}];\n", quoted(nodes[i]), quoted(text),
                           color->second);
    }
    // SpanningTree keeps edges sorted by (a, b) names with a < b.
    for (const auto& e : tree.edges()) {
        out += fmt::format("  {} -- {} [weight={:.6g}];\n", quoted(nodes[e.a]), quoted(nodes[e.b]), e.weight);
    }
    out += "}\n";
    return out;
}

}  // namespace corrnet
