#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gdpm/context.hpp"
#include "gdpm/mining.hpp"

namespace gdpm {

/// Frequency bins given by ascending edges e0 < e1 < ... < en: bin i covers
/// [e_i, e_{i+1}), except the last bin which also includes its upper edge.
struct BinSpec {
    std::vector<double> edges;

    static BinSpec uniform(unsigned bins, double lo = 0.0, double hi = 1.0);
    static BinSpec standard() { return uniform(5); }

    std::size_t size() const { return edges.empty() ? 0 : edges.size() - 1; }
    /// Bin index of a value; values outside the edges go to the nearest bin.
    std::size_t bin_of(double v) const;
    std::string label(std::size_t bin) const;
    /// Throws std::invalid_argument unless the edges are usable.
    void validate() const;
};

struct HistogramRow {
    unsigned level = 0;
    std::uint64_t entries = 0;
    std::vector<std::uint64_t> counts;   // per bin
    std::vector<double> percents;        // counts scaled to the level's total
    double level_share = 0.0;            // |level| / all closed itemsets
};

/// Support-frequency distribution of each level (level 0 is counted in the
/// shares' denominator but gets no row of its own).
struct FrequencyHistogram {
    BinSpec bins;
    std::uint64_t closed_count = 0;
    std::vector<HistogramRow> rows;
};

FrequencyHistogram frequency_bins(const ClosureStructure& s, const FormalContext& ctx,
                                  const BinSpec& bins = BinSpec::standard());

struct AttributeFrequency {
    std::uint32_t attribute = 0;
    std::string name;
    std::uint64_t support = 0;
    double frequency = 0.0;
};

/// All attributes ordered by ascending frequency; ties keep id order.
std::vector<AttributeFrequency> attribute_frequencies(const FormalContext& ctx);

struct CoverageRow {
    unsigned level = 0;            // meaningful for the per-level rows only
    std::uint64_t covered = 0;     // incidence cells inside some entry's rectangle
    double coverage = 0.0;         // covered / total incidences
    double overlap_mean = 0.0;     // entries per covered cell, covered cells only
    double overlap_std = 0.0;      // population deviation over covered cells
};

/// Coverage of one set of entries. Throws on a context with no incidences.
CoverageRow coverage_of_entries(std::span<const LevelEntry> entries, const FormalContext& ctx);

/// Per-level coverage rows for levels 0..ci.
std::vector<CoverageRow> coverage_by_level(const ClosureStructure& s, const FormalContext& ctx);

/// Coverage of all levels pooled together.
CoverageRow coverage_union(const ClosureStructure& s, const FormalContext& ctx);

/// Majority-class F1 of one entry's extent against labels; ties between
/// classes go to the smallest class id.
double entry_f1(const LevelEntry& entry, const std::vector<std::uint32_t>& labels);

struct F1Cell {
    unsigned level = 0;
    std::size_t bin = 0;
    std::uint64_t entries = 0;
    double mean_f1 = 0.0;
};

/// Mean majority-class F1 grouped by (level, support-frequency bin).
/// `labels` assigns a class id to every object.
std::vector<F1Cell> f1_by_level(const ClosureStructure& s, const FormalContext& ctx,
                                const std::vector<std::uint32_t>& labels,
                                const BinSpec& bins = BinSpec::standard());

/// Exact implication: passkey determines the rest of its closure.
struct Rule {
    ItemSet antecedent;              // the entry's passkey
    ItemSet consequent;              // closure minus passkey, never empty
    std::uint64_t support = 0;       // objects satisfying the whole closure
    std::uint64_t consequent_support = 0;
    double confidence = 1.0;         // exact by construction
    double lift(std::uint64_t object_count) const {
        return static_cast<double>(object_count) / static_cast<double>(consequent_support);
    }
};

struct RuleSet {
    std::uint64_t object_count = 0;
    std::vector<Rule> rules;
};

/// One rule per entry whose passkey is a proper subset of its closure,
/// filtered by minimum support (>= 1), sorted by descending lift, then
/// descending support, then lexicographic antecedent.
RuleSet implications(const ClosureStructure& s, const FormalContext& ctx,
                     std::uint64_t min_support = 1);

struct SummaryCell {
    std::uint64_t count = 0;
    double mean_support = 0.0;
    double std_support = 0.0;
};

/// Count and support moments of the closed itemsets, grouped by
/// (level, closed-set size).
struct LevelSummary {
    // by_level[k] maps closed-set size -> cell
    std::vector<std::map<unsigned, SummaryCell>> by_level;
};

LevelSummary level_summary(const ClosureStructure& s);

}  // namespace gdpm
