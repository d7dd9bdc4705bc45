#include "corrnet/cli.hpp"

#include "corrnet/error.hpp"
#include "corrnet/export.hpp"
#include "corrnet/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <set>

#include <CLI11.hpp>
#include <fmt/core.h>

namespace corrnet {

namespace {

namespace fs = std::filesystem;

// Raw flag values; a flag only overrides the config file when it was given.
struct Flags {
    std::string config;
    std::vector<std::string> prices;
    std::string sectors;
    std::string baseline;
    std::string end;
    std::vector<std::string> snapshot_dates;
    double band_width = 0.4;
    double yellow = -0.10;
    double red = -0.25;
    double min_coverage = 1.0;
    std::string out_dir;
    bool nearest_prior = false;

    // Stage inputs and outputs; empty means "<out-dir>/<default name>".
    std::string corr_in, dist_in, tree_in, centrality_in;
    std::string out, corr_out, dist_out, bands_out;
};

struct Options {
    CLI::Option* prices = nullptr;
    CLI::Option* sectors = nullptr;
    CLI::Option* baseline = nullptr;
    CLI::Option* end = nullptr;
    CLI::Option* dates = nullptr;
    CLI::Option* band_width = nullptr;
    CLI::Option* yellow = nullptr;
    CLI::Option* red = nullptr;
    CLI::Option* coverage = nullptr;
    CLI::Option* out_dir = nullptr;
    CLI::Option* nearest_prior = nullptr;
};

Options add_config_flags(CLI::App& cmd, Flags& f) {
    Options o;
    cmd.add_option("--config", f.config, "key = value configuration file");
    o.prices = cmd.add_option("--prices", f.prices, "price CSV (ticker,date,close); repeatable");
    o.sectors = cmd.add_option("--sectors", f.sectors, "sector CSV (ticker,sector)");
    o.baseline = cmd.add_option("--baseline", f.baseline, "first date of the window (YYYY-MM-DD)");
    o.end = cmd.add_option("--end", f.end, "last date of the window (YYYY-MM-DD)");
    o.dates = cmd.add_option("--snapshot-date,--date", f.snapshot_dates, "snapshot date; repeatable");
    o.band_width = cmd.add_option("--band-width", f.band_width, "width of each distance band");
    o.yellow = cmd.add_option("--yellow-threshold", f.yellow, "returns at or below this are yellow");
    o.red = cmd.add_option("--red-threshold", f.red, "returns below this are red");
    o.coverage = cmd.add_option("--min-coverage", f.min_coverage, "calendar coverage a ticker needs");
    o.out_dir = cmd.add_option("--out-dir", f.out_dir, "output directory (default: $CORRNET_OUT_DIR or .)");
    o.nearest_prior = cmd.add_flag("--nearest-prior", f.nearest_prior,
                                   "use the previous close for non-trading snapshot dates");
    return o;
}

RunConfig build_config(const Flags& f, const Options& o) {
    RunConfig cfg;
    bool out_dir_from_file = false;
    if (!f.config.empty()) {
        const std::string before = cfg.output_dir;
        apply_config_file(f.config, cfg);
        out_dir_from_file = cfg.output_dir != before;
    }
    if (o.prices->count() > 0) cfg.prices_paths = f.prices;
    if (o.sectors->count() > 0) cfg.sectors_path = f.sectors;
    if (o.baseline->count() > 0) cfg.baseline = Date::from_string(f.baseline);
    if (o.end->count() > 0) cfg.end = Date::from_string(f.end);
    if (o.dates->count() > 0) {
        cfg.snapshot_dates.clear();
        for (const auto& d : f.snapshot_dates) cfg.snapshot_dates.push_back(Date::from_string(d));
    }
    if (o.band_width->count() > 0) cfg.band_width = f.band_width;
    if (o.yellow->count() > 0) cfg.thresholds.yellow_cutoff = f.yellow;
    if (o.red->count() > 0) cfg.thresholds.red_cutoff = f.red;
    if (o.coverage->count() > 0) cfg.min_coverage = f.min_coverage;
    if (o.nearest_prior->count() > 0) cfg.nearest_prior = true;
    if (o.out_dir->count() > 0) {
        cfg.output_dir = f.out_dir;
    } else if (!out_dir_from_file) {
        const char* env = std::getenv("CORRNET_OUT_DIR");
        cfg.output_dir = (env && *env) ? env : ".";
    }
    cfg.validate();
    return cfg;
}

// Resolves a prior-stage input and fails early with the expected path.
std::string stage_input(const std::string& given, const RunConfig& cfg, const char* default_name,
                        const char* producer) {
    const std::string path = given.empty() ? (fs::path(cfg.output_dir) / default_name).string() : given;
    if (!fs::exists(path)) {
        throw Error(fmt::format("missing input: expected {} (produced by `corrnet {}`)", path, producer));
    }
    return path;
}

// Writes one output either to an explicit path or into the output directory.
void write_output(OutputSet& dir_outputs, const std::string& explicit_path, const char* default_name,
                  std::string_view content) {
    if (explicit_path.empty()) {
        dir_outputs.write(default_name, content);
        return;
    }
    fs::path p(explicit_path);
    OutputSet single(p.has_parent_path() ? p.parent_path() : fs::path("."));
    single.write(p.filename().string(), content);
}

PricePanel load_panel(const RunConfig& cfg, std::ostream& err) {
    auto aligned = prepare_panel(cfg);
    if (!aligned.dropped.empty()) {
        err << fmt::format("corrnet: dropped {} ticker(s) with incomplete coverage:", aligned.dropped.size());
        for (const auto& t : aligned.dropped) err << ' ' << t;
        err << '\n';
    }
    return std::move(aligned.panel);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"corrnet: stock correlation networks, spanning trees and crisis snapshots", "corrnet"};
    app.require_subcommand(1);

    Flags f;
    std::function<void()> action;

    auto* corr = app.add_subcommand("corr", "log-returns -> correlation and distance matrices");
    auto corr_opts = add_config_flags(*corr, f);
    corr->add_option("--corr-out", f.corr_out, "correlation matrix CSV");
    corr->add_option("--dist-out", f.dist_out, "distance matrix CSV");
    corr->callback([&] {
        action = [&] {
            const auto cfg = build_config(f, corr_opts);
            const auto panel = load_panel(cfg, err);
            const auto c = pearson_matrix(log_returns(panel));
            OutputSet outputs(cfg.output_dir);
            write_output(outputs, f.corr_out, artifact::kCorrelation, render::matrix(c));
            write_output(outputs, f.dist_out, artifact::kDistance, render::matrix(distance_matrix(c)));
        };
    });

    auto* mst = app.add_subcommand("mst", "distance matrix -> minimum spanning tree edges");
    auto mst_opts = add_config_flags(*mst, f);
    mst->add_option("--dist", f.dist_in, "distance matrix CSV");
    mst->add_option("--out", f.out, "tree edge CSV");
    mst->callback([&] {
        action = [&] {
            const auto cfg = build_config(f, mst_opts);
            const auto dist = load_distance_csv(stage_input(f.dist_in, cfg, artifact::kDistance, "corr"));
            OutputSet outputs(cfg.output_dir);
            write_output(outputs, f.out, artifact::kTree, render::tree(minimum_spanning_tree(build_graph(dist))));
        };
    });

    auto* cent = app.add_subcommand("centrality", "tree -> betweenness scores");
    auto cent_opts = add_config_flags(*cent, f);
    cent->add_option("--tree", f.tree_in, "tree edge CSV");
    cent->add_option("--out", f.out, "centrality CSV");
    cent->callback([&] {
        action = [&] {
            const auto cfg = build_config(f, cent_opts);
            const auto tree = load_tree_csv(stage_input(f.tree_in, cfg, artifact::kTree, "mst"));
            const auto scores = betweenness(tree);
            OutputSet outputs(cfg.output_dir);
            write_output(outputs, f.out, artifact::kCentrality, render::centrality(scores));
            out << "central node: " << central_node(scores) << '\n';
        };
    });

    auto* bands = app.add_subcommand("bands", "distance bands around the hub and their return series");
    auto bands_opts = add_config_flags(*bands, f);
    bands->add_option("--dist", f.dist_in, "distance matrix CSV");
    bands->add_option("--centrality", f.centrality_in, "centrality CSV");
    bands->add_option("--bands-out", f.bands_out, "band assignment CSV");
    bands->add_option("--out", f.out, "band series CSV");
    bands->callback([&] {
        action = [&] {
            const auto cfg = build_config(f, bands_opts);
            const auto dist = load_distance_csv(stage_input(f.dist_in, cfg, artifact::kDistance, "corr"));
            const auto scores =
                load_centrality_csv(stage_input(f.centrality_in, cfg, artifact::kCentrality, "centrality"));
            const auto panel = load_panel(cfg, err);
            const auto assignment = distance_bands(dist, central_node(scores), cfg.band_width);
            OutputSet outputs(cfg.output_dir);
            write_output(outputs, f.bands_out, artifact::kBands, render::bands(assignment));
            write_output(outputs, f.out, artifact::kBandSeries,
                         render::band_series(full_band_series(panel, assignment, cfg.baseline)));
        };
    });

    auto* sectors = app.add_subcommand("sectors", "correlation matrix -> sector correlation table");
    auto sectors_opts = add_config_flags(*sectors, f);
    sectors->add_option("--corr", f.corr_in, "correlation matrix CSV");
    sectors->add_option("--out", f.out, "sector table CSV");
    sectors->callback([&] {
        action = [&] {
            const auto cfg = build_config(f, sectors_opts);
            if (cfg.sectors_path.empty()) throw Error("no sector file given (--sectors)");
            const auto c = load_correlation_csv(stage_input(f.corr_in, cfg, artifact::kCorrelation, "corr"));
            OutputSet outputs(cfg.output_dir);
            write_output(outputs, f.out, artifact::kSectorTable,
                         render::sector_table(sector_table(c, load_sectors(cfg.sectors_path))));
        };
    });

    auto* snap = app.add_subcommand("snapshot", "classify returns at snapshot dates (CSV + DOT per date)");
    auto snap_opts = add_config_flags(*snap, f);
    snap->add_option("--tree", f.tree_in, "tree edge CSV");
    snap->callback([&] {
        action = [&] {
            const auto cfg = build_config(f, snap_opts);
            const auto tree = load_tree_csv(stage_input(f.tree_in, cfg, artifact::kTree, "mst"));
            const auto panel = load_panel(cfg, err);
            OutputSet outputs(cfg.output_dir);
            std::set<Date> done;
            for (const auto& requested : cfg.snapshot_schedule()) {
                if (!done.insert(requested).second) continue;
                const Date at = resolve_trading_date(panel, requested, cfg.nearest_prior);
                const auto s = snapshot(panel, cfg.baseline, at, cfg.thresholds);
                outputs.write(artifact::snapshot_csv(requested), render::snapshot(s));
                outputs.write(artifact::snapshot_dot(requested), to_dot(tree, class_colors(s)));
            }
        };
    });

    auto* dot = app.add_subcommand("export-dot", "tree -> DOT coloured by sector");
    auto dot_opts = add_config_flags(*dot, f);
    dot->add_option("--tree", f.tree_in, "tree edge CSV");
    dot->add_option("--out", f.out, "DOT output");
    dot->callback([&] {
        action = [&] {
            const auto cfg = build_config(f, dot_opts);
            if (cfg.sectors_path.empty()) throw Error("no sector file given (--sectors)");
            const auto tree = load_tree_csv(stage_input(f.tree_in, cfg, artifact::kTree, "mst"));
            OutputSet outputs(cfg.output_dir);
            write_output(outputs, f.out, artifact::kSectorDot,
                         to_dot(tree, sector_colors(load_sectors(cfg.sectors_path))));
        };
    });

    auto* run = app.add_subcommand("run", "full pipeline with manifest");
    auto run_opts = add_config_flags(*run, f);
    run->callback([&] {
        action = [&] {
            const auto cfg = build_config(f, run_opts);
            const auto manifest = run_pipeline(cfg, &err);
            out << fmt::format("wrote {} artifact(s) and {}\n", manifest.entries.size(),
                               (fs::path(cfg.output_dir) / artifact::kManifest).string());
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (action) action();
    } catch (const std::exception& e) {
        err << "corrnet: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace corrnet
