#pragma once

#include "corrnet/correlate.hpp"
#include "corrnet/date.hpp"
#include "corrnet/graph.hpp"
#include "corrnet/ingest.hpp"
#include "corrnet/snapshot.hpp"

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace corrnet {

struct RunConfig {
    std::vector<std::string> prices_paths;
    std::string sectors_path;
    Date baseline{2007, 8, 1};
    Date end{2008, 10, 10};
    // Empty means the default event dates that fall inside [baseline, end].
    std::vector<Date> snapshot_dates;
    double band_width = 0.4;
    ClassThresholds thresholds;
    double min_coverage = 1.0;
    bool nearest_prior = false;
    std::string output_dir = ".";

    // Throws corrnet::Error on an inconsistent configuration. Touches no files.
    void validate() const;

    std::vector<Date> snapshot_schedule() const;
};

// Applies `key = value` lines onto `config`. Keys match the long command-line
// flags without the leading dashes; `prices` and `snapshot-date` may repeat
// (the first occurrence replaces the default list). `#` starts a comment.
void apply_config_text(std::istream& in, RunConfig& config);
void apply_config_file(const std::string& path, RunConfig& config);

// Output file names inside the output directory.
namespace artifact {
inline constexpr const char* kCorrelation = "correlation.csv";
inline constexpr const char* kDistance = "distance.csv";
inline constexpr const char* kTree = "mst.csv";
inline constexpr const char* kCentrality = "centrality.csv";
inline constexpr const char* kBands = "bands.csv";
inline constexpr const char* kBandSeries = "band_series.csv";
inline constexpr const char* kSectorTable = "sector_table.csv";
inline constexpr const char* kSectorDot = "network_sectors.dot";
inline constexpr const char* kManifest = "manifest.csv";

std::string snapshot_csv(const Date& d);
std::string snapshot_dot(const Date& d);
}  // namespace artifact

struct ManifestEntry {
    std::string file;    // relative to the output directory
    std::string sha256;  // lowercase hex
};

struct Manifest {
    std::vector<ManifestEntry> entries;  // sorted by file
};

std::string sha256_hex(std::string_view bytes);

// Loads every price source, keeps [baseline, end], and aligns.
AlignResult prepare_panel(const RunConfig& config);

// Text renderings shared by `run` and the single-stage subcommands so both
// paths emit identical bytes.
namespace render {
std::string matrix(const LabeledSymmetricMatrix& m);
std::string tree(const SpanningTree& t);
std::string centrality(const CentralityScores& s);
std::string bands(const BandAssignment& b);
std::string band_series(const BandSeries& s);
std::string sector_table(const SectorCorrelationTable& t);
std::string snapshot(const SnapshotClassification& s);
}  // namespace render

// Band series over every trading date of the panel from the baseline on.
BandSeries full_band_series(const PricePanel& panel, const BandAssignment& bands, const Date& baseline);

// Collects files written into one directory; remove_all() deletes them again.
class OutputSet {
public:
    explicit OutputSet(std::filesystem::path dir);

    // Writes `content` to dir/name, replacing any existing file.
    void write(const std::string& name, std::string_view content);

    const std::filesystem::path& dir() const { return dir_; }
    const std::vector<std::pair<std::string, std::string>>& written() const { return written_; }

    void remove_all() noexcept;

private:
    std::filesystem::path dir_;
    std::vector<std::pair<std::string, std::string>> written_;  // name, sha256
};

void write_manifest_csv(std::ostream& out, const Manifest& manifest);

// Runs every stage and writes all artifacts plus manifest.csv. On failure all
// files written by this call are removed and the error is rethrown.
Manifest run_pipeline(const RunConfig& config, std::ostream* log = nullptr);

}  // namespace corrnet
