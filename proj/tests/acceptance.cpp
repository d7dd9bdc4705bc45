// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "corrnet/correlate.hpp"
#include "corrnet/export.hpp"
#include "corrnet/fixture.hpp"
#include "corrnet/graph.hpp"
#include "corrnet/pipeline.hpp"
#include "corrnet/snapshot.hpp"
#include "dot_fixtures.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>

using namespace corrnet;
using namespace corrnet::testing;
namespace fs = std::filesystem;

namespace {

// A check records the first failure message; later failures are ignored.
struct Verdict {
    std::string failure;
    void require(bool ok, const std::string& what) {
        if (!ok && failure.empty()) failure = what;
    }
};

using Clock = std::chrono::steady_clock;

bool report(int id, std::string_view title, double limit_s, const std::function<void(Verdict&)>& body) {
    Verdict v;
    const auto start = Clock::now();
    try {
        body(v);
    } catch (const std::exception& e) {
        v.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (limit_s > 0 && secs >= limit_s) v.require(false, fmt::format("took {:.2f}s, limit {:.0f}s", secs, limit_s));
    const bool ok = v.failure.empty();
    std::cout << fmt::format("[{}] criterion {:>2}: {} ({:.3f}s){}\n", ok ? "PASS" : "FAIL", id, title, secs,
                             ok ? "" : " -- " + v.failure);
    return ok;
}

DistanceMatrix random_distances(std::mt19937_64& rng, std::size_t n) {
    DistanceMatrix d(oracle::make_tickers(n), 0.0);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, u(rng));
    return d;
}

std::set<std::pair<std::size_t, std::size_t>> edge_set(const SpanningTree& t) {
    std::set<std::pair<std::size_t, std::size_t>> out;
    for (const auto& e : t.edges()) out.emplace(std::min(e.a, e.b), std::max(e.a, e.b));
    return out;
}

// First date index at which a band_series.csv column drops below `level`.
std::optional<std::size_t> first_below(const std::string& csv, std::size_t band, double level) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    for (std::size_t row = 0; std::getline(in, line); ++row) {
        std::vector<std::string> fields;
        std::istringstream cells(line);
        for (std::string f; std::getline(cells, f, ',');) fields.push_back(f);
        if (fields.size() > band && !fields[band].empty() && std::stod(fields[band]) < level) return row;
    }
    return std::nullopt;
}

struct FixtureRun {
    TempDir dir;
    std::string prices, sectors;
    SectorMap sector_map;
};

RunConfig fixture_config(const FixtureRun& f, const fs::path& out) {
    RunConfig cfg;
    cfg.prices_paths = {f.prices};
    cfg.sectors_path = f.sectors;
    cfg.output_dir = out.string();
    return cfg;
}

}  // namespace

int main() {
    bool all = true;

    all &= report(1, "distance transform exactness and round-trip", 1.0, [](Verdict& v) {
        v.require(std::abs(correlation_distance(1.0) - 0.0) <= 1e-12, "d(1) != 0");
        v.require(std::abs(correlation_distance(-1.0) - 2.0) <= 1e-12, "d(-1) != 2");
        v.require(std::abs(correlation_distance(0.0) - std::sqrt(2.0)) <= 1e-12, "d(0) != sqrt 2");
        v.require(std::abs(correlation_distance(0.5) - 1.0) <= 1e-12, "d(0.5) != 1");
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int k = 0; k < 1000; ++k) {
            const double rho = u(rng);
            const double d = correlation_distance(rho);
            v.require(std::abs((1.0 - d * d / 2.0) - rho) <= 1e-12, fmt::format("round-trip of {}", rho));
        }
    });

    all &= report(2, "Pearson matrix against a two-pass oracle", 10.0, [](Verdict& v) {
        std::mt19937_64 rng(2);
        for (int round = 0; round < 200; ++round) {
            const std::size_t n = 2 + rng() % 9;
            const std::size_t obs = 3 + rng() % 48;
            const auto panel = oracle::random_returns(rng, n, obs);
            const auto c = pearson_matrix(panel);
            for (std::size_t i = 0; i < n; ++i) {
                v.require(c(i, i) == 1.0, fmt::format("panel {}: diagonal {} is {}", round, i, c(i, i)));
                for (std::size_t j = 0; j < n; ++j) {
                    v.require(c(i, j) == c(j, i), fmt::format("panel {}: asymmetric at ({}, {})", round, i, j));
                    if (i == j) continue;
                    const double ref = oracle::two_pass_pearson(panel.series(i), panel.series(j));
                    v.require(std::abs(c(i, j) - ref) <= 1e-12,
                              fmt::format("panel {}: ({}, {}) = {} vs {}", round, i, j, c(i, j), ref));
                }
            }
        }
    });

    all &= report(3, "spanning tree against exhaustive enumeration", 10.0, [](Verdict& v) {
        std::mt19937_64 rng(3);
        for (int round = 0; round < 100; ++round) {
            const std::size_t n = 2 + rng() % 5;
            const auto g = build_graph(random_distances(rng, n));
            const auto t = minimum_spanning_tree(g);
            const auto brute = oracle::exhaustive_mst(g);
            v.require(t.edges().size() == n - 1, fmt::format("graph {}: wrong edge count", round));
            v.require(std::abs(t.total_weight() - brute.min_weight) <= 1e-12,
                      fmt::format("graph {}: weight {} vs {}", round, t.total_weight(), brute.min_weight));
            if (brute.argmin_count == 1) {
                v.require(edge_set(t) == brute.argmin, fmt::format("graph {}: edge sets differ", round));
            }
        }
    });

    all &= report(4, "tree betweenness against path-walk enumeration", 10.0, [](Verdict& v) {
        std::mt19937_64 rng(4);
        for (int round = 0; round < 100; ++round) {
            const std::size_t n = 2 + rng() % 49;
            const auto tree = oracle::random_tree(rng, n);
            const auto scores = betweenness(tree);
            v.require(scores.scores == oracle::path_walk_betweenness(tree), fmt::format("tree {}: mismatch", round));
            for (std::size_t k = 0; k < n; ++k) {
                if (tree.neighbors(k).size() == 1) {
                    v.require(scores.scores[k] == 0, fmt::format("tree {}: leaf {} scores nonzero", round, k));
                }
            }
        }
    });

    all &= report(5, "return classification boundaries and monotonicity", 0.0, [](Verdict& v) {
        v.require(classify_return(-0.09) == ReturnClass::Green, "-0.09 not green");
        v.require(classify_return(-0.10) == ReturnClass::Yellow, "-0.10 not yellow");
        v.require(classify_return(-0.25) == ReturnClass::Yellow, "-0.25 not yellow");
        v.require(classify_return(-0.26) == ReturnClass::Red, "-0.26 not red");
        auto severity = [](ReturnClass c) { return c == ReturnClass::Green ? 0 : c == ReturnClass::Yellow ? 1 : 2; };
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(-0.6, 0.3);
        std::vector<double> r(1000);
        for (auto& x : r) x = u(rng);
        std::sort(r.begin(), r.end());
        for (std::size_t k = 1; k < r.size(); ++k) {
            v.require(severity(classify_return(r[k - 1])) >= severity(classify_return(r[k])),
                      fmt::format("not monotone between {} and {}", r[k - 1], r[k]));
        }
    });

    all &= report(6, "distance band boundaries and coverage", 0.0, [](Verdict& v) {
        DistanceMatrix d({"C", "X", "Y", "Z"}, 0.0);
        d.set(0, 1, 0.4);
        d.set(0, 2, 0.41);
        d.set(0, 3, 2.0);
        const auto b = distance_bands(d, "C");
        v.require(b.bands == std::vector<std::size_t>{1, 2, 5}, "boundary bands differ from 1, 2, 5");
        std::mt19937_64 rng(6);
        for (int round = 0; round < 200; ++round) {
            const std::size_t n = 2 + rng() % 40;
            const auto m = random_distances(rng, n);
            const auto a = distance_bands(m, m.tickers()[rng() % n]);
            v.require(a.tickers.size() == n - 1, fmt::format("matrix {}: not every ticker assigned", round));
            for (auto band : a.bands) v.require(band >= 1 && band <= 5, fmt::format("matrix {}: band {}", round, band));
        }
    });

    // The 533-ticker fixture is shared by criteria 7 and 9.
    FixtureRun fx;
    fs::path first_out = fx.dir.path / "run1";
    all &= report(7, "synthetic 533-ticker fixture end to end", 60.0, [&](Verdict& v) {
        const auto data = fixture::generate();
        fixture::write_dataset(data, (fx.dir.path / "data").string());
        fx.prices = (fx.dir.path / "data" / "prices.csv").string();
        fx.sectors = (fx.dir.path / "data" / "sectors.csv").string();
        fx.sector_map = data.sectors;
        std::size_t total = 0;
        for (auto s : fixture::kSectorSizes) total += s;
        v.require(total == 533 && data.sectors.assignments.size() == 533, "fixture does not have 533 tickers");

        const auto m1 = run_pipeline(fixture_config(fx, first_out));
        const auto m2 = run_pipeline(fixture_config(fx, fx.dir.path / "run2"));

        const auto hub = central_node(load_centrality_csv((first_out / artifact::kCentrality).string()));
        const auto sector = data.sectors.find(hub);
        v.require(sector == Sector::Financial || sector == Sector::Services,
                  fmt::format("hub {} is not in a high-correlation block", hub));

        const auto series = read_file(first_out / artifact::kBandSeries);
        const auto inner = first_below(series, 1, -0.10);
        const auto outer = first_below(series, 5, -0.10);
        v.require(inner.has_value(), "band 1 never crosses -0.10");
        v.require(outer.has_value(), "band 5 never crosses -0.10");
        if (inner && outer) v.require(*inner < *outer, "band 1 does not cross before band 5");

        v.require(!m1.entries.empty(), "empty manifest");
        v.require(read_file(first_out / artifact::kManifest) == read_file(fx.dir.path / "run2" / artifact::kManifest),
                  "manifests differ between runs");
    });

    all &= report(8, "DOT goldens and re-parse", 0.0, [](Verdict& v) {
        for (const auto& [name, f] : {std::pair{"two_node.dot", two_node_fixture()},
                                      std::pair{"ten_node.dot", ten_node_fixture()}}) {
            const auto dot = to_dot(f.tree, f.colors);
            v.require(dot == read_golden(name), fmt::format("{} differs from the golden", name));
            const auto parsed = parse_dot(dot);
            v.require(parsed.well_formed, fmt::format("{} does not re-parse", name));
            std::map<std::string, std::string> colors(f.colors.begin(), f.colors.end());
            v.require(parsed.fillcolors == colors, fmt::format("{}: fill colours differ", name));
            std::set<std::tuple<std::string, std::string, std::string>> edges;
            for (const auto& e : f.tree.edges()) {
                edges.emplace(f.tree.nodes()[e.a], f.tree.nodes()[e.b], fmt::format("{:.6g}", e.weight));
            }
            v.require(parsed.edges == edges, fmt::format("{}: edges differ", name));
        }
    });

    all &= report(9, "staged CLI output equals `run` on the fixture", 0.0, [&](Verdict& v) {
        v.require(!fx.prices.empty() && fs::exists(first_out / artifact::kManifest), "fixture run missing");
        if (!v.failure.empty()) return;
        const auto staged = (fx.dir.path / "staged").string();
        for (const char* stage : {"corr", "mst", "centrality", "bands", "sectors", "snapshot", "export-dot"}) {
            const auto r = cli({stage, "--prices", fx.prices, "--sectors", fx.sectors, "--out-dir", staged});
            v.require(r.code == 0, fmt::format("`corrnet {}` failed: {}", stage, r.err));
        }
        std::size_t compared = 0;
        for (const auto& entry : fs::directory_iterator(first_out)) {
            const auto name = entry.path().filename().string();
            if (name == artifact::kManifest) continue;
            v.require(read_file(entry.path()) == read_file(fs::path(staged) / name), name + " differs");
            ++compared;
        }
        v.require(compared == 8 + 2 * default_snapshot_dates().size(), fmt::format("compared {} files", compared));
    });

    std::cout << "[SKIP] criterion 10: historical reproduction needs user-supplied closes "
                 "(see scripts/compare_table1.py)\n";
    std::cout << (all ? "acceptance: all criteria passed\n" : "acceptance: FAILED\n");
    return all ? 0 : 1;
}
