#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gdpm/analysis.hpp"
#include "gdpm/context.hpp"
#include "gdpm/mining.hpp"

namespace gdpm {

struct TransactionLoadResult {
    FormalContext ctx;
    std::vector<std::string> warnings;
};

/// Transaction format: one object per line, whitespace-separated attribute
/// ids. The attribute universe is the largest id seen plus one, or the line
/// count of the optional names file. Lines without tokens are skipped;
/// duplicated ids within a line are dropped with a warning.
TransactionLoadResult load_transactions(const std::filesystem::path& file,
                                        const std::optional<std::filesystem::path>& names_file = {});

struct CsvLoadResult {
    FormalContext ctx;
    std::vector<std::string> warnings;
    // present when a label column was extracted
    std::vector<std::uint32_t> labels;
    std::vector<std::string> label_names;  // class id -> original value
    bool has_labels = false;
};

/// Comma-separated table with a header row; cells are scaled through the
/// binarization config. An optional label column is pulled out before
/// scaling and returned as class ids (values sorted, numerically when they
/// all parse as numbers).
CsvLoadResult load_csv(const std::filesystem::path& file, const BinarizationConfig& config,
                       const std::string& label_column = {});

/// Plain CSV reader (no quoting rules): header row, comma-separated cells,
/// surrounding whitespace trimmed. Ragged rows are an error.
ManyValuedTable read_csv(const std::filesystem::path& file);

/// Config file mapping column names to scaling rules, e.g.
///   {"s1": {"intervals": [[1,2],[2,3]]},
///    "s2": {"equal_width": 3},
///    "s3": {"values": "auto"},
///    "s4": {"values": ["low", "high"]}}
BinarizationConfig load_binarization_config(const std::filesystem::path& file);

/// Class ids for a labels file (one label per line). Distinct values are
/// sorted — numerically when they all parse — and numbered from zero.
std::pair<std::vector<std::uint32_t>, std::vector<std::string>> load_labels(
    const std::filesystem::path& file);

// --- report model ---------------------------------------------------------

struct ReportEntry {
    std::vector<std::uint32_t> closed;
    std::vector<std::uint32_t> passkey;
    std::uint64_t support = 0;
    std::optional<std::vector<std::uint32_t>> ext;  // absent when elided

    bool operator==(const ReportEntry&) const = default;
};

struct ReportRule {
    std::vector<std::uint32_t> antecedent;
    std::vector<std::uint32_t> consequent;
    std::uint64_t support = 0;
    std::uint64_t consequent_support = 0;

    bool operator==(const ReportRule&) const = default;
};

/// Self-contained result of one run: dataset descriptors, mining metadata,
/// the closure structure, and whichever analyses were requested.
struct Report {
    static constexpr int current_schema = 1;

    int schema_version = current_schema;

    std::uint64_t objects = 0;
    std::uint64_t attributes = 0;
    std::uint64_t incidences = 0;
    double density = 0.0;
    std::vector<std::string> attribute_names;

    std::string variant;  // "int" or "ext"
    std::optional<unsigned> k_max;
    bool truncated = false;
    std::vector<LevelStats> mining_levels;
    std::size_t trie_nodes = 0;

    unsigned ci = 0;
    bool ci_lower_bound_only = false;
    std::vector<std::vector<ReportEntry>> levels;

    std::optional<SizeBounds> bounds;  // absent for truncated runs

    std::optional<FrequencyHistogram> histogram;
    std::optional<std::vector<AttributeFrequency>> attribute_frequency_list;
    std::optional<std::vector<CoverageRow>> coverage_levels;
    std::optional<CoverageRow> coverage_all;
    std::optional<std::vector<F1Cell>> f1;
    std::optional<RuleSet> rules;
    std::optional<LevelSummary> summary;
};

inline constexpr std::size_t kNoExtentLimit = static_cast<std::size_t>(-1);

/// Builds the core report (no analysis sections). Extents larger than
/// `extent_limit` are elided; their support is kept.
Report make_report(const FormalContext& ctx, const ClosureStructure& s,
                   std::size_t extent_limit = kNoExtentLimit);

std::string report_to_json(const Report& report);                // lossless
Report report_from_json(const std::string& text);
void write_report_json(const Report& report, const std::filesystem::path& file);
Report load_report_json(const std::filesystem::path& file);

/// Writes one delimiter-separated table per populated section into `dir`
/// (levels.tsv, histogram.tsv, coverage.tsv, f1.tsv, rules.tsv,
/// level_summary.tsv, attributes.tsv). Returns the files written.
std::vector<std::filesystem::path> write_report_tables(const Report& report,
                                                       const std::filesystem::path& dir);

}  // namespace gdpm
