#include "corrnet/graph.hpp"

#include "corrnet/error.hpp"
#include "csv_util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include <fmt/core.h>

namespace corrnet {

// ---------------------------------------------------------------------------
// UnionFind

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool UnionFind::unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (size_[x] < size_[y]) std::swap(x, y);
    parent_[y] = x;
    size_[x] += size_[y];
    return true;
}

// ---------------------------------------------------------------------------
// SpanningTree

SpanningTree::SpanningTree(std::vector<std::string> nodes, std::vector<WeightedEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), adjacency_(nodes_.size()) {
    const std::size_t n = nodes_.size();
    if (n == 0) throw Error("spanning tree: no nodes");
    if (edges_.size() != n - 1) {
        throw Error(fmt::format("spanning tree: {} edges for {} nodes", edges_.size(), n));
    }
    for (auto& e : edges_) {
        if (e.a >= n || e.b >= n || e.a == e.b) throw Error("spanning tree: invalid edge endpoint");
        if (!(e.weight >= 0.0)) throw Error("spanning tree: negative edge weight");
        if (nodes_[e.b] < nodes_[e.a]) std::swap(e.a, e.b);
    }
    std::sort(edges_.begin(), edges_.end(), [&](const WeightedEdge& l, const WeightedEdge& r) {
        return std::tie(nodes_[l.a], nodes_[l.b]) < std::tie(nodes_[r.a], nodes_[r.b]);
    });
    UnionFind uf(n);
    for (const auto& e : edges_) {
        if (!uf.unite(e.a, e.b)) {
            throw Error(fmt::format("spanning tree: edge {}-{} closes a cycle", nodes_[e.a], nodes_[e.b]));
        }
        adjacency_[e.a].push_back(e.b);
        adjacency_[e.b].push_back(e.a);
    }
    for (auto& adj : adjacency_) {
        std::sort(adj.begin(), adj.end(), [&](std::size_t l, std::size_t r) { return nodes_[l] < nodes_[r]; });
    }
}

double SpanningTree::total_weight() const {
    double total = 0.0;
    for (const auto& e : edges_) total += e.weight;
    return total;
}

// ---------------------------------------------------------------------------
// Graph construction and MST

WeightedGraph build_graph(const DistanceMatrix& dist) {
    const std::size_t n = dist.size();
    if (n < 2) throw Error("graph needs at least 2 tickers");
    WeightedGraph g;
    g.nodes = dist.tickers();
    g.edges.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double w = dist(i, j);
            if (!(w >= 0.0)) {
                throw Error(fmt::format("negative distance between {} and {}", g.nodes[i], g.nodes[j]));
            }
            g.edges.push_back({i, j, w});
        }
    }
    return g;
}

SpanningTree minimum_spanning_tree(const WeightedGraph& graph) {
    const auto& names = graph.nodes;
    struct Keyed {
        double weight;
        const std::string* lo;
        const std::string* hi;
        std::size_t edge;
    };
    std::vector<Keyed> order;
    order.reserve(graph.edges.size());
    for (std::size_t k = 0; k < graph.edges.size(); ++k) {
        const auto& e = graph.edges[k];
        const std::string* x = &names[e.a];
        const std::string* y = &names[e.b];
        if (*y < *x) std::swap(x, y);
        order.push_back({e.weight, x, y, k});
    }
    std::sort(order.begin(), order.end(), [](const Keyed& l, const Keyed& r) {
        if (l.weight != r.weight) return l.weight < r.weight;
        if (*l.lo != *r.lo) return *l.lo < *r.lo;
        return *l.hi < *r.hi;
    });

    UnionFind uf(names.size());
    std::vector<WeightedEdge> chosen;
    chosen.reserve(names.size() - 1);
    for (const auto& k : order) {
        const auto& e = graph.edges[k.edge];
        if (uf.unite(e.a, e.b)) {
            chosen.push_back(e);
            if (chosen.size() + 1 == names.size()) break;
        }
    }
    if (chosen.size() + 1 != names.size()) throw Error("graph is not connected");
    return SpanningTree(names, std::move(chosen));
}

// ---------------------------------------------------------------------------
// Betweenness

CentralityScores betweenness(const SpanningTree& tree) {
    const std::size_t n = tree.size();
    // Iterative DFS from node 0: parent links and a pre-order to fold subtree
    // sizes bottom-up.
    std::vector<std::size_t> parent(n, n);
    std::vector<std::size_t> preorder;
    preorder.reserve(n);
    std::vector<std::size_t> stack{0};
    parent[0] = 0;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        preorder.push_back(v);
        for (std::size_t w : tree.neighbors(v)) {
            if (w == parent[v]) continue;
            parent[w] = v;
            stack.push_back(w);
        }
    }

    std::vector<std::uint64_t> subtree(n, 1);
    for (auto it = preorder.rbegin(); it != preorder.rend(); ++it) {
        if (*it != 0) subtree[parent[*it]] += subtree[*it];
    }

    CentralityScores out{tree.nodes(), std::vector<std::uint64_t>(n, 0)};
    const std::uint64_t others = n - 1;
    for (std::size_t v = 0; v < n; ++v) {
        // Component sizes after deleting v: one per child plus the parent side.
        std::uint64_t sum_sq = 0;
        for (std::size_t w : tree.neighbors(v)) {
            const std::uint64_t s = (v != 0 && w == parent[v]) ? n - subtree[v] : subtree[w];
            sum_sq += s * s;
        }
        out.scores[v] = (others * others - sum_sq) / 2;
    }
    return out;
}

std::string central_node(const CentralityScores& scores) {
    if (scores.tickers.empty()) throw Error("central node of an empty score set");
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.tickers.size(); ++i) {
        if (scores.scores[i] > scores.scores[best] ||
            (scores.scores[i] == scores.scores[best] && scores.tickers[i] < scores.tickers[best])) {
            best = i;
        }
    }
    return scores.tickers[best];
}

// ---------------------------------------------------------------------------
// Distance bands

std::size_t band_count_for(double band_width) {
    if (!(band_width > 0.0) || !std::isfinite(band_width)) throw Error("band width must be positive");
    std::size_t k = 1;
    while (static_cast<double>(k) * band_width < 2.0 - 1e-12) ++k;
    return k;
}

BandAssignment distance_bands(const DistanceMatrix& dist, const std::string& center, double band_width) {
    const std::size_t c = dist.index_of(center);
    if (c == DistanceMatrix::npos) throw Error(fmt::format("center {} is not in the distance matrix", center));

    BandAssignment out;
    out.center = center;
    out.band_width = band_width;
    out.band_count = band_count_for(band_width);
    for (std::size_t j = 0; j < dist.size(); ++j) {
        if (j == c) continue;
        const double d = dist(c, j);
        if (d > 2.0 + 1e-9 || !(d >= 0.0)) {
            throw Error(fmt::format("distance {} between {} and {} violates the metric bound", d, center,
                                    dist.tickers()[j]));
        }
        std::size_t band = out.band_count;
        for (std::size_t k = 1; k <= out.band_count; ++k) {
            if (d <= static_cast<double>(k) * band_width) {
                band = k;
                break;
            }
        }
        out.tickers.push_back(dist.tickers()[j]);
        out.distances.push_back(d);
        out.bands.push_back(band);
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV

void write_tree_csv(std::ostream& out, const SpanningTree& tree) {
    out << "ticker_a,ticker_b,weight\n";
    for (const auto& e : tree.edges()) {
        out << tree.nodes()[e.a] << ',' << tree.nodes()[e.b] << ',' << detail::format_exact(e.weight) << '\n';
    }
}

SpanningTree parse_tree_csv(std::istream& in) {
    struct Row {
        std::string a, b;
        double w;
    };
    std::vector<Row> rows;
    std::set<std::string> names;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (detail::is_blank(line)) continue;
        auto f = detail::split_csv_line(line);
        if (line_no == 1 && f.size() == 3 && f[0] == "ticker_a") continue;
        if (f.size() != 3) {
            throw ParseError(fmt::format("expected 3 columns, found {}, line {}", f.size(), line_no), line_no);
        }
        auto w = detail::parse_double(f[2]);
        if (!w || !std::isfinite(*w)) {
            throw ParseError(fmt::format("unparsable weight '{}', line {}", f[2], line_no), line_no);
        }
        rows.push_back({std::string(f[0]), std::string(f[1]), *w});
        names.insert(rows.back().a);
        names.insert(rows.back().b);
    }
    if (rows.empty()) throw ParseError("tree file has no edges", 0);
    std::vector<std::string> nodes(names.begin(), names.end());
    auto idx = [&](const std::string& t) {
        return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), t) - nodes.begin());
    };
    std::vector<WeightedEdge> edges;
    for (const auto& r : rows) edges.push_back({idx(r.a), idx(r.b), r.w});
    return SpanningTree(std::move(nodes), std::move(edges));
}

SpanningTree load_tree_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(fmt::format("cannot open tree file '{}'", path));
    try {
        return parse_tree_csv(in);
    } catch (const ParseError& e) {
        throw ParseError(fmt::format("{}: {}", path, e.what()), e.line());
    } catch (const Error& e) {
        throw Error(fmt::format("{}: {}", path, e.what()));
    }
}

void write_centrality_csv(std::ostream& out, const CentralityScores& scores) {
    std::vector<std::size_t> order(scores.tickers.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return scores.tickers[l] < scores.tickers[r]; });
    out << "ticker,betweenness\n";
    for (std::size_t i : order) out << scores.tickers[i] << ',' << scores.scores[i] << '\n';
}

CentralityScores parse_centrality_csv(std::istream& in) {
    CentralityScores out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (detail::is_blank(line)) continue;
        auto f = detail::split_csv_line(line);
        if (line_no == 1 && f.size() == 2 && f[0] == "ticker") continue;
        std::uint64_t v = 0;
        if (f.size() != 2 || std::from_chars(f[1].data(), f[1].data() + f[1].size(), v).ptr !=
                                 f[1].data() + f[1].size() || f[1].empty()) {
            throw ParseError(fmt::format("malformed centrality row, line {}", line_no), line_no);
        }
        out.tickers.emplace_back(f[0]);
        out.scores.push_back(v);
    }
    if (out.tickers.empty()) throw ParseError("centrality file is empty", 0);
    return out;
}

CentralityScores load_centrality_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(fmt::format("cannot open centrality file '{}'", path));
    try {
        return parse_centrality_csv(in);
    } catch (const ParseError& e) {
        throw ParseError(fmt::format("{}: {}", path, e.what()), e.line());
    }
}

void write_bands_csv(std::ostream& out, const BandAssignment& bands) {
    out << "ticker,distance,band\n";
    out << bands.center << ",0,0\n";
    for (std::size_t i = 0; i < bands.tickers.size(); ++i) {
        out << bands.tickers[i] << ',' << detail::format_exact(bands.distances[i]) << ',' << bands.bands[i]
            << '\n';
    }
}

}  // namespace corrnet
