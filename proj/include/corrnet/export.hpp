#pragma once

#include "corrnet/graph.hpp"
#include "corrnet/sector.hpp"
#include "corrnet/snapshot.hpp"

#include <map>
#include <string>
#include <string_view>

namespace corrnet {

using ColorMap = std::map<std::string, std::string, std::less<>>;

// X11/DOT colour keyword for each category.
std::string_view sector_color(Sector s);
std::string_view class_color(ReturnClass c);

ColorMap sector_colors(const SectorMap& sectors);
ColorMap class_colors(const SnapshotClassification& snap);

// Undirected DOT for a tree. Output layout, byte for byte:
//
//   graph corrnet {
//     "A" [label="A", style=filled, fillcolor=green];
//     "A" -- "B" [weight=0.5];
//   }
//
// Nodes in lexicographic order, edges by (a, b), LF line endings, weights at
// 6 significant digits. Labels default to the ticker.
std::string to_dot(const SpanningTree& tree, const ColorMap& colors, const ColorMap& labels = {});

}  // namespace corrnet
