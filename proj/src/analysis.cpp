#include "gdpm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gdpm {

BinSpec BinSpec::uniform(unsigned bins, double lo, double hi) {
    if (bins == 0) throw std::invalid_argument("need at least one bin");
    if (!(lo < hi)) throw std::invalid_argument("bin range is empty");
    BinSpec spec;
    for (unsigned i = 0; i <= bins; ++i)
        spec.edges.push_back(lo + (hi - lo) * i / bins);
    return spec;
}

void BinSpec::validate() const {
    if (edges.size() < 2) throw std::invalid_argument("bin spec needs at least two edges");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i - 1] < edges[i]))
            throw std::invalid_argument("bin edges must be strictly increasing");
}

std::size_t BinSpec::bin_of(double v) const {
    // values below the first edge clamp to bin 0, values at or above the
    // last edge clamp to the final bin (whose upper edge is inclusive)
    if (edges.size() < 2) return 0;
    auto it = std::upper_bound(edges.begin(), edges.end(), v);
    if (it == edges.begin()) return 0;
    std::size_t bin = static_cast<std::size_t>(it - edges.begin()) - 1;
    return std::min(bin, edges.size() - 2);
}

std::string BinSpec::label(std::size_t bin) const {
    char buf[64];
    const bool last = bin + 2 == edges.size();
    std::snprintf(buf, sizeof buf, "[%g,%g%c", edges.at(bin), edges.at(bin + 1),
                  last ? ']' : ')');
    return buf;
}

FrequencyHistogram frequency_bins(const ClosureStructure& s, const FormalContext& ctx,
                                  const BinSpec& bins) {
    bins.validate();
    if (ctx.object_count() == 0)
        throw std::invalid_argument("support frequencies are undefined without objects");
    FrequencyHistogram h;
    h.bins = bins;
    h.closed_count = s.closed_count();
    const double n = static_cast<double>(ctx.object_count());
    for (unsigned k = 1; k < s.levels.size(); ++k) {
        HistogramRow row;
        row.level = k;
        row.entries = s.levels[k].size();
        row.counts.assign(bins.size(), 0);
        for (const auto& e : s.levels[k])
            ++row.counts[bins.bin_of(static_cast<double>(e.support) / n)];
        row.percents.assign(bins.size(), 0.0);
        if (row.entries > 0)
            for (std::size_t b = 0; b < row.counts.size(); ++b)
                row.percents[b] = 100.0 * static_cast<double>(row.counts[b])
                                  / static_cast<double>(row.entries);
        row.level_share = h.closed_count == 0
                              ? 0.0
                              : static_cast<double>(row.entries)
                                    / static_cast<double>(h.closed_count);
        h.rows.push_back(std::move(row));
    }
    return h;
}

std::vector<AttributeFrequency> attribute_frequencies(const FormalContext& ctx) {
    std::vector<AttributeFrequency> out;
    out.reserve(ctx.attribute_count());
    const double n = static_cast<double>(ctx.object_count());
    for (std::uint32_t m = 0; m < ctx.attribute_count(); ++m) {
        AttributeFrequency f;
        f.attribute = m;
        f.name = ctx.attribute_name(m);
        f.support = ctx.col(m).count();
        f.frequency = ctx.object_count() == 0 ? 0.0 : static_cast<double>(f.support) / n;
        out.push_back(std::move(f));
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.support < b.support;
    });
    return out;
}

CoverageRow coverage_of_entries(std::span<const LevelEntry> entries, const FormalContext& ctx) {
    const std::uint64_t incidences = ctx.incidence_count();
    if (incidences == 0)
        throw std::invalid_argument("coverage is undefined on a context without incidences");

    // Every cell of an entry's rectangle ext x closed is an incidence, so
    // counting per cell over the rectangle never leaves the relation.
    const std::size_t attrs = ctx.attribute_count();
    std::vector<std::uint32_t> hits(ctx.object_count() * attrs, 0);
    for (const auto& e : entries)
        e.ext.for_each([&](std::uint32_t g) {
            e.closed.for_each([&](std::uint32_t m) { ++hits[g * attrs + m]; });
        });

    CoverageRow row;
    double sum = 0.0, sum_sq = 0.0;
    for (auto h : hits) {
        if (h == 0) continue;
        ++row.covered;
        sum += h;
        sum_sq += static_cast<double>(h) * h;
    }
    row.coverage = static_cast<double>(row.covered) / static_cast<double>(incidences);
    if (row.covered > 0) {
        const double n = static_cast<double>(row.covered);
        row.overlap_mean = sum / n;
        row.overlap_std = std::sqrt(std::max(0.0, sum_sq / n - row.overlap_mean * row.overlap_mean));
    }
    return row;
}

std::vector<CoverageRow> coverage_by_level(const ClosureStructure& s, const FormalContext& ctx) {
    std::vector<CoverageRow> rows;
    for (unsigned k = 0; k < s.levels.size(); ++k) {
        CoverageRow row = coverage_of_entries(s.levels[k], ctx);
        row.level = k;
        rows.push_back(row);
    }
    return rows;
}

CoverageRow coverage_union(const ClosureStructure& s, const FormalContext& ctx) {
    std::vector<LevelEntry> all;
    for (const auto& level : s.levels) all.insert(all.end(), level.begin(), level.end());
    return coverage_of_entries(all, ctx);
}

double entry_f1(const LevelEntry& entry, const std::vector<std::uint32_t>& labels) {
    std::uint32_t classes = 0;
    for (auto c : labels) classes = std::max(classes, c + 1);
    std::vector<std::uint64_t> inside(classes, 0), total(classes, 0);
    for (auto c : labels) ++total[c];
    entry.ext.for_each([&](std::uint32_t g) { ++inside[labels[g]]; });

    std::uint32_t majority = 0;  // ties resolved toward the smallest class id
    for (std::uint32_t c = 1; c < classes; ++c)
        if (inside[c] > inside[majority]) majority = c;

    const double tp = classes == 0 ? 0.0 : static_cast<double>(inside[majority]);
    const double fp = static_cast<double>(entry.ext.count()) - tp;
    const double fn = classes == 0 ? 0.0 : static_cast<double>(total[majority]) - tp;
    const double denom = 2 * tp + fp + fn;
    return denom == 0.0 ? 0.0 : 2 * tp / denom;
}

std::vector<F1Cell> f1_by_level(const ClosureStructure& s, const FormalContext& ctx,
                                const std::vector<std::uint32_t>& labels, const BinSpec& bins) {
    bins.validate();
    if (labels.size() != ctx.object_count())
        throw std::invalid_argument("label count (" + std::to_string(labels.size())
                                    + ") does not match object count ("
                                    + std::to_string(ctx.object_count()) + ")");
    if (ctx.object_count() == 0)
        throw std::invalid_argument("F1 is undefined without objects");

    const double n = static_cast<double>(ctx.object_count());
    std::map<std::pair<unsigned, std::size_t>, std::pair<std::uint64_t, double>> acc;
    for (unsigned k = 0; k < s.levels.size(); ++k)
        for (const auto& e : s.levels[k]) {
            const std::size_t bin = bins.bin_of(static_cast<double>(e.support) / n);
            auto& slot = acc[{k, bin}];
            ++slot.first;
            slot.second += entry_f1(e, labels);
        }

    std::vector<F1Cell> out;
    for (const auto& [key, slot] : acc) {
        F1Cell cell;
        cell.level = key.first;
        cell.bin = key.second;
        cell.entries = slot.first;
        cell.mean_f1 = slot.second / static_cast<double>(slot.first);
        out.push_back(cell);
    }
    return out;
}

RuleSet implications(const ClosureStructure& s, const FormalContext& ctx,
                     std::uint64_t min_support) {
    if (min_support < 1) throw std::invalid_argument("min_support must be at least 1");
    RuleSet rs;
    rs.object_count = ctx.object_count();
    for (const auto& level : s.levels)
        for (const auto& e : level) {
            if (e.support < min_support) continue;
            if (e.passkey == e.closed) continue;  // nothing left to imply
            Rule r;
            r.antecedent = e.passkey;
            r.consequent = e.closed;
            r.consequent.subtract(e.passkey);
            r.support = e.support;
            r.consequent_support = extent(ctx, r.consequent).count();
            rs.rules.push_back(std::move(r));
        }
    std::sort(rs.rules.begin(), rs.rules.end(), [](const Rule& a, const Rule& b) {
        // lift shares its numerator across the rule set, so descending lift
        // is exactly ascending consequent support
        if (a.consequent_support != b.consequent_support)
            return a.consequent_support < b.consequent_support;
        if (a.support != b.support) return a.support > b.support;
        return a.antecedent.lex_less(b.antecedent);
    });
    return rs;
}

LevelSummary level_summary(const ClosureStructure& s) {
    LevelSummary out;
    out.by_level.resize(s.levels.size());
    for (unsigned k = 0; k < s.levels.size(); ++k) {
        std::map<unsigned, std::pair<std::vector<double>, std::uint64_t>> groups;
        for (const auto& e : s.levels[k])
            groups[static_cast<unsigned>(e.closed.count())].first.push_back(
                static_cast<double>(e.support));
        for (auto& [size, group] : groups) {
            const auto& supports = group.first;
            SummaryCell cell;
            cell.count = supports.size();
            double sum = 0.0;
            for (double v : supports) sum += v;
            cell.mean_support = sum / static_cast<double>(supports.size());
            double var = 0.0;
            for (double v : supports) var += (v - cell.mean_support) * (v - cell.mean_support);
            cell.std_support = std::sqrt(var / static_cast<double>(supports.size()));
            out.by_level[k][size] = cell;
        }
    }
    return out;
}

}  // namespace gdpm
