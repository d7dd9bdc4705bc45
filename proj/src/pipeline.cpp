#include "corrnet/pipeline.hpp"

#include "corrnet/error.hpp"
#include "corrnet/export.hpp"
#include "csv_util.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/core.h>
#include <openssl/evp.h>

namespace corrnet {

void RunConfig::validate() const {
    if (!(baseline < end)) {
        throw Error(fmt::format("baseline {} must be earlier than end {}", baseline.to_string(), end.to_string()));
    }
    if (!(band_width > 0.0)) throw Error(fmt::format("band width must be positive (got {})", band_width));
    if (!(thresholds.red_cutoff < thresholds.yellow_cutoff)) {
        throw Error(fmt::format("red threshold {} must be below yellow threshold {}", thresholds.red_cutoff,
                                thresholds.yellow_cutoff));
    }
    if (!(min_coverage > 0.0) || min_coverage > 1.0) {
        throw Error(fmt::format("min coverage must lie in (0, 1] (got {})", min_coverage));
    }
    for (const auto& d : snapshot_dates) {
        if (d < baseline || end < d) {
            throw Error(fmt::format("snapshot date {} lies outside [{}, {}]", d.to_string(), baseline.to_string(),
                                    end.to_string()));
        }
    }
}

std::vector<Date> RunConfig::snapshot_schedule() const {
    if (!snapshot_dates.empty()) return snapshot_dates;
    std::vector<Date> out;
    for (const auto& d : default_snapshot_dates()) {
        if (!(d < baseline) && !(end < d)) out.push_back(d);
    }
    return out;
}

namespace {

double parse_number(std::string_view key, std::string_view value) {
    auto v = detail::parse_double(value);
    if (!v) throw Error(fmt::format("config: '{}' expects a number, got '{}'", key, value));
    return *v;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw Error(fmt::format("config: '{}' expects true/false, got '{}'", key, value));
}

}  // namespace

void apply_config_text(std::istream& in, RunConfig& config) {
    bool prices_seen = false;
    bool dates_seen = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (detail::is_blank(line)) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(fmt::format("config: expected 'key = value', line {}", line_no), line_no);
        }
        const std::string key(detail::trim(std::string_view(line).substr(0, eq)));
        const std::string value(detail::trim(std::string_view(line).substr(eq + 1)));
        try {
            if (key == "prices") {
                if (!prices_seen) config.prices_paths.clear();
                prices_seen = true;
                config.prices_paths.push_back(value);
            } else if (key == "sectors") {
                config.sectors_path = value;
            } else if (key == "baseline") {
                config.baseline = Date::from_string(value);
            } else if (key == "end") {
                config.end = Date::from_string(value);
            } else if (key == "snapshot-date") {
                if (!dates_seen) config.snapshot_dates.clear();
                dates_seen = true;
                config.snapshot_dates.push_back(Date::from_string(value));
            } else if (key == "band-width") {
                config.band_width = parse_number(key, value);
            } else if (key == "yellow-threshold") {
                config.thresholds.yellow_cutoff = parse_number(key, value);
            } else if (key == "red-threshold") {
                config.thresholds.red_cutoff = parse_number(key, value);
            } else if (key == "min-coverage") {
                config.min_coverage = parse_number(key, value);
            } else if (key == "nearest-prior") {
                config.nearest_prior = parse_bool(key, value);
            } else if (key == "out-dir") {
                config.output_dir = value;
            } else {
                throw Error(fmt::format("config: unknown key '{}'", key));
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(fmt::format("{}, line {}", e.what(), line_no), line_no);
        }
    }
}

void apply_config_file(const std::string& path, RunConfig& config) {
    std::ifstream in(path);
    if (!in) throw Error(fmt::format("cannot open config file '{}'", path));
    try {
        apply_config_text(in, config);
    } catch (const ParseError& e) {
        throw ParseError(fmt::format("{}: {}", path, e.what()), e.line());
    }
}

namespace artifact {
std::string snapshot_csv(const Date& d) { return fmt::format("snapshot_{}.csv", d.to_string()); }
std::string snapshot_dot(const Date& d) { return fmt::format("snapshot_{}.dot", d.to_string()); }
}  // namespace artifact

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("sha256 digest failed");
    }
    std::string hex;
    hex.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
    return hex;
}

AlignResult prepare_panel(const RunConfig& config) {
    if (config.prices_paths.empty()) throw Error("no price file given (--prices)");
    std::vector<std::vector<PriceRecord>> sources;
    for (const auto& path : config.prices_paths) sources.push_back(load_prices(path));
    auto merged = merge_sources(sources);
    std::erase_if(merged, [&](const PriceRecord& r) { return r.date < config.baseline || config.end < r.date; });
    return align_panel(merged, AlignPolicy{config.min_coverage});
}

namespace render {

namespace {
template <typename F>
std::string to_string(F&& write) {
    std::ostringstream out;
    write(out);
    return std::move(out).str();
}
}  // namespace

std::string matrix(const LabeledSymmetricMatrix& m) {
    return to_string([&](std::ostream& o) { write_matrix_csv(o, m); });
}
std::string tree(const SpanningTree& t) {
    return to_string([&](std::ostream& o) { write_tree_csv(o, t); });
}
std::string centrality(const CentralityScores& s) {
    return to_string([&](std::ostream& o) { write_centrality_csv(o, s); });
}
std::string bands(const BandAssignment& b) {
    return to_string([&](std::ostream& o) { write_bands_csv(o, b); });
}
std::string band_series(const BandSeries& s) {
    return to_string([&](std::ostream& o) { write_band_series_csv(o, s); });
}
std::string sector_table(const SectorCorrelationTable& t) {
    return to_string([&](std::ostream& o) { write_sector_table_csv(o, t); });
}
std::string snapshot(const SnapshotClassification& s) {
    return to_string([&](std::ostream& o) { write_snapshot_csv(o, s); });
}

}  // namespace render

BandSeries full_band_series(const PricePanel& panel, const BandAssignment& bands, const Date& baseline) {
    const auto& dates = panel.dates();
    auto first = std::lower_bound(dates.begin(), dates.end(), baseline);
    std::vector<Date> tail(first, dates.end());
    return band_series(panel, bands, baseline, tail);
}

// ---------------------------------------------------------------------------
// OutputSet

OutputSet::OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}

void OutputSet::write(const std::string& name, std::string_view content) {
    std::filesystem::create_directories(dir_);
    const auto path = dir_ / name;
    // Record before writing so a half-written file is cleaned up too.
    written_.emplace_back(name, std::string{});
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write {}", path.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw Error(fmt::format("failed writing {}", path.string()));
    written_.back().second = sha256_hex(content);
}

void OutputSet::remove_all() noexcept {
    for (const auto& [name, hash] : written_) {
        std::error_code ec;
        std::filesystem::remove(dir_ / name, ec);
    }
    written_.clear();
}

void write_manifest_csv(std::ostream& out, const Manifest& manifest) {
    out << "file,sha256\n";
    for (const auto& e : manifest.entries) out << e.file << ',' << e.sha256 << '\n';
}

// ---------------------------------------------------------------------------
// Full pipeline

Manifest run_pipeline(const RunConfig& config, std::ostream* log) {
    config.validate();
    if (config.sectors_path.empty()) throw Error("no sector file given (--sectors)");

    OutputSet outputs(config.output_dir);
    try {
        auto aligned = prepare_panel(config);
        if (log && !aligned.dropped.empty()) {
            *log << fmt::format("dropped {} ticker(s) with incomplete coverage:", aligned.dropped.size());
            for (const auto& t : aligned.dropped) *log << ' ' << t;
            *log << '\n';
        }
        const PricePanel& panel = aligned.panel;
        const SectorMap sectors = load_sectors(config.sectors_path);

        const auto corr = pearson_matrix(log_returns(panel));
        const auto dist = distance_matrix(corr);
        const auto tree = minimum_spanning_tree(build_graph(dist));
        const auto scores = betweenness(tree);
        const auto center = central_node(scores);
        const auto bands = distance_bands(dist, center, config.band_width);
        const auto table = sector_table(corr, sectors);

        outputs.write(artifact::kCorrelation, render::matrix(corr));
        outputs.write(artifact::kDistance, render::matrix(dist));
        outputs.write(artifact::kTree, render::tree(tree));
        outputs.write(artifact::kCentrality, render::centrality(scores));
        outputs.write(artifact::kBands, render::bands(bands));
        outputs.write(artifact::kBandSeries, render::band_series(full_band_series(panel, bands, config.baseline)));
        outputs.write(artifact::kSectorTable, render::sector_table(table));
        outputs.write(artifact::kSectorDot, to_dot(tree, sector_colors(sectors)));

        std::set<Date> done;
        for (const auto& requested : config.snapshot_schedule()) {
            if (!done.insert(requested).second) continue;
            const Date at = resolve_trading_date(panel, requested, config.nearest_prior);
            const auto snap = snapshot(panel, config.baseline, at, config.thresholds);
            outputs.write(artifact::snapshot_csv(requested), render::snapshot(snap));
            outputs.write(artifact::snapshot_dot(requested), to_dot(tree, class_colors(snap)));
        }

        Manifest manifest;
        for (const auto& [name, hash] : outputs.written()) manifest.entries.push_back({name, hash});
        std::sort(manifest.entries.begin(), manifest.entries.end(),
                  [](const ManifestEntry& l, const ManifestEntry& r) { return l.file < r.file; });
        std::ostringstream text;
        write_manifest_csv(text, manifest);
        outputs.write(artifact::kManifest, text.str());
        return manifest;
    } catch (...) {
        outputs.remove_all();
        throw;
    }
}

}  // namespace corrnet
