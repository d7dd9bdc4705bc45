#pragma once

#include "corrnet/correlate.hpp"

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace corrnet {

// Edge between node indices a < b.
struct WeightedEdge {
    std::size_t a = 0;
    std::size_t b = 0;
    double weight = 0.0;

    friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

// Complete undirected graph; edges enumerated in (a, b) order.
struct WeightedGraph {
    std::vector<std::string> nodes;
    std::vector<WeightedEdge> edges;
};

class SpanningTree {
public:
    SpanningTree() = default;
    // Validates that `edges` form a spanning tree over `nodes`; edges are
    // normalised to a < b and sorted by (a, b).
    SpanningTree(std::vector<std::string> nodes, std::vector<WeightedEdge> edges);

    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<WeightedEdge>& edges() const { return edges_; }
    const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_[v]; }
    std::size_t size() const { return nodes_.size(); }

    double total_weight() const;

    friend bool operator==(const SpanningTree& l, const SpanningTree& r) {
        return l.nodes_ == r.nodes_ && l.edges_ == r.edges_;
    }

private:
    std::vector<std::string> nodes_;
    std::vector<WeightedEdge> edges_;
    std::vector<std::vector<std::size_t>> adjacency_;
};

// Raw betweenness on a tree: the number of unordered pairs {s, t} whose path
// passes through the node, endpoints excluded.
struct CentralityScores {
    std::vector<std::string> tickers;
    std::vector<std::uint64_t> scores;
};

struct BandAssignment {
    std::string center;
    double band_width = 0.4;
    std::size_t band_count = 5;
    std::vector<std::string> tickers;  // every ticker except the center
    std::vector<double> distances;     // d(center, ticker)
    std::vector<std::size_t> bands;    // 1-based band index
};

// Disjoint-set forest with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(std::size_t n);
    std::size_t find(std::size_t x);
    // Returns false if x and y were already connected.
    bool unite(std::size_t x, std::size_t y);

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

WeightedGraph build_graph(const DistanceMatrix& dist);

// Kruskal over edges ordered by (weight, ticker_a, ticker_b). Node order is
// taken from the graph; ties resolve towards lexicographically smaller keys.
SpanningTree minimum_spanning_tree(const WeightedGraph& graph);

CentralityScores betweenness(const SpanningTree& tree);

// Highest score; ties go to the lexicographically smallest ticker.
std::string central_node(const CentralityScores& scores);

// Bands are the right-closed intervals ((k-1) w, k w], k = 1..ceil(2 / w),
// measured by direct metric distance from `center`. A non-center ticker at
// distance 0 is placed in band 1.
BandAssignment distance_bands(const DistanceMatrix& dist, const std::string& center,
                              double band_width = 0.4);

// Number of bands needed to cover (0, 2] at the given width.
std::size_t band_count_for(double band_width);

// Tree CSV: `ticker_a,ticker_b,weight`, sorted by (ticker_a, ticker_b) with
// ticker_a < ticker_b, weights at 17 significant digits.
void write_tree_csv(std::ostream& out, const SpanningTree& tree);
SpanningTree parse_tree_csv(std::istream& in);
SpanningTree load_tree_csv(const std::string& path);

// Centrality CSV: `ticker,betweenness`, sorted by ticker.
void write_centrality_csv(std::ostream& out, const CentralityScores& scores);
CentralityScores parse_centrality_csv(std::istream& in);
CentralityScores load_centrality_csv(const std::string& path);

// Band assignment CSV: `ticker,distance,band` with the center listed first
// as band 0 and distance 0.
void write_bands_csv(std::ostream& out, const BandAssignment& bands);

}  // namespace corrnet
