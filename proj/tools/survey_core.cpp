#include "survey_core.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>

#include "gdpm/analysis.hpp"
#include "gdpm/io.hpp"
#include "gdpm/mining.hpp"

namespace gdpm::survey {

const std::vector<Expectation>& expectations() {
    static const std::vector<Expectation> table = {
        {"adult", 48842, 95, 2, 12, 359141, {"adult"}},
        {"auto", 205, 129, 6, 8, 57789, {"auto"}},
        {"breast", 699, 14, 2, 6, 361, {"breast"}},
        {"car_evaluation", 1728, 21, 4, 6, 8000, {"carevaluation", "car"}},
        {"chess_kr_k", 28056, 40, 18, 6, 84636, {"chesskrk"}},
        {"cylinder_bands", 540, 120, 2, 19, 39829537, {"cylinderbands", "cylbands"}},
        {"dermatology", 366, 43, 6, 9, 14152, {"dermatology"}},
        {"ecoli", 327, 24, 5, 6, 425, {"ecoli"}},
        {"glass", 214, 40, 6, 8, 3246, {"glass"}},
        {"heart-disease", 303, 45, 5, 9, 25539, {"heartdisease", "heart"}},
        {"hepatitis", 155, 50, 2, 11, 144871, {"hepatitis"}},
        {"horse_colic", 368, 81, 2, 9, 173866, {"horsecolic"}},
        {"ionosphere", 351, 155, 2, 17, 23202541, {"ionosphere"}},
        {"iris", 150, 16, 3, 4, 120, {"iris"}},
        {"led7", 3200, 14, 10, 7, 1951, {"led7"}},
        {"mushroom", 8124, 88, 2, 10, 181945, {"mushroom", "agaricus"}},
        {"nursery", 12960, 27, 5, 8, 115200, {"nursery"}},
        {"page_blocks", 5473, 39, 5, 8, 723, {"pageblocks"}},
        {"pen_digits", 10992, 76, 10, 11, 3605507, {"pendigits"}},
        {"pima", 768, 36, 2, 8, 1626, {"pima", "pimaindians"}},
        {"soybean", 683, 99, 19, 13, 2874252, {"soybean"}},
        {"tic_tac_toe", 958, 27, 2, 7, 42712, {"tictactoe"}},
        {"wine", 178, 65, 3, 7, 13229, {"wine"}},
        {"zoo", 101, 35, 7, 7, 4570, {"zoo"}},
    };
    return table;
}

namespace {

std::string normalize(std::string s) {
    std::string out;
    for (char c : s)
        if (std::isalnum(static_cast<unsigned char>(c)))
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// Class labels arrive as trailing items; ".C<n>." in the filename overrides
// the published class count.
std::optional<unsigned> classes_from_filename(const std::string& stem) {
    for (std::size_t i = 0; i + 1 < stem.size(); ++i) {
        if (stem[i] != '.' || (stem[i + 1] != 'C' && stem[i + 1] != 'c')) continue;
        std::size_t j = i + 2;
        unsigned value = 0;
        bool digits = false;
        while (j < stem.size() && std::isdigit(static_cast<unsigned char>(stem[j]))) {
            value = value * 10 + static_cast<unsigned>(stem[j] - '0');
            digits = true;
            ++j;
        }
        if (digits && (j == stem.size() || stem[j] == '.')) return value;
    }
    return std::nullopt;
}

std::optional<std::filesystem::path> find_dataset_file(const std::filesystem::path& dir,
                                                       const Expectation& e) {
    std::vector<std::filesystem::path> hits;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string stem = normalize(entry.path().filename().string());
        for (const char* alias : e.aliases)
            if (stem.rfind(normalize(alias), 0) == 0) {
                hits.push_back(entry.path());
                break;
            }
    }
    if (hits.empty()) return std::nullopt;
    std::sort(hits.begin(), hits.end());
    return hits.front();
}

// Drops the class items (the given number of trailing ids) and renumbers the
// remaining ones densely, keeping their ascending order.
FormalContext prepare(const FormalContext& raw, unsigned classes) {
    const std::size_t total = raw.attribute_count();
    const std::size_t keep_below = classes >= total ? 0 : total - classes;

    std::vector<std::uint32_t> remap(total, 0);
    std::uint32_t next = 0;
    for (std::uint32_t m = 0; m < keep_below; ++m)
        if (!raw.col(m).empty()) remap[m] = next++;

    std::vector<std::vector<std::uint32_t>> rows(raw.object_count());
    for (std::size_t g = 0; g < raw.object_count(); ++g)
        raw.row(g).for_each([&](std::uint32_t m) {
            if (m < keep_below && !raw.col(m).empty()) rows[g].push_back(remap[m]);
        });
    return FormalContext::from_rows(next, rows);
}

struct StreamedAnalytics {
    BinSpec bins = BinSpec::standard();
    std::vector<LevelStats> level_stats;
    std::vector<std::vector<std::uint64_t>> hist_counts;  // per level >= 1
    std::map<std::pair<unsigned, unsigned>, std::array<double, 3>> summary;  // n, sum, sumsq
    std::uint64_t closed = 0;
    unsigned ci = 0;
    bool truncated = false;
};

Report analytics_report(const FormalContext& ctx, const StreamedAnalytics& a) {
    Report r;
    r.objects = ctx.object_count();
    r.attributes = ctx.attribute_count();
    r.incidences = ctx.incidence_count();
    r.density = ctx.density();
    r.attribute_names = ctx.attribute_names();
    r.variant = "int";
    r.truncated = a.truncated;
    r.mining_levels = a.level_stats;
    r.trie_nodes = a.level_stats.empty() ? 0 : a.level_stats.back().trie_nodes;
    r.ci = a.ci;
    r.ci_lower_bound_only = a.truncated;
    r.levels.clear();  // entries are streamed out, only aggregates are kept

    FrequencyHistogram h;
    h.bins = a.bins;
    h.closed_count = a.closed;
    for (std::size_t k = 0; k < a.hist_counts.size(); ++k) {
        HistogramRow row;
        row.level = static_cast<unsigned>(k + 1);
        row.counts = a.hist_counts[k];
        for (auto c : row.counts) row.entries += c;
        row.percents.assign(row.counts.size(), 0.0);
        if (row.entries > 0)
            for (std::size_t b = 0; b < row.counts.size(); ++b)
                row.percents[b] = 100.0 * static_cast<double>(row.counts[b])
                                  / static_cast<double>(row.entries);
        row.level_share = a.closed == 0 ? 0.0
                                        : static_cast<double>(row.entries)
                                              / static_cast<double>(a.closed);
        h.rows.push_back(std::move(row));
    }
    r.histogram = std::move(h);

    LevelSummary summary;
    summary.by_level.resize(a.level_stats.size());
    for (const auto& [key, acc] : a.summary) {
        SummaryCell cell;
        cell.count = static_cast<std::uint64_t>(acc[0]);
        cell.mean_support = acc[1] / acc[0];
        cell.std_support = std::sqrt(std::max(0.0, acc[2] / acc[0]
                                                       - cell.mean_support * cell.mean_support));
        summary.by_level[key.first][key.second] = cell;
    }
    r.summary = std::move(summary);
    return r;
}

}  // namespace

std::vector<Result> run_survey(const std::filesystem::path& dir, const Options& options) {
    std::vector<Result> results;
    for (const auto& e : expectations()) {
        if (!options.only.empty()
            && std::find(options.only.begin(), options.only.end(), e.name) == options.only.end())
            continue;
        Result r;
        r.name = e.name;
        auto file = find_dataset_file(dir, e);
        if (!file) {
            results.push_back(std::move(r));
            continue;
        }
        r.found = true;
        r.file = *file;

        const auto started = std::chrono::steady_clock::now();
        const auto loaded = load_transactions(*file);
        unsigned classes = options.strip_classes ? e.classes : 0;
        if (options.strip_classes)
            if (auto from_name = classes_from_filename(file->filename().string()))
                classes = *from_name;
        const FormalContext ctx = prepare(loaded.ctx, classes);
        r.objects = ctx.object_count();
        r.attributes = ctx.attribute_count();

        StreamedAnalytics acc;
        const double n = static_cast<double>(ctx.object_count());
        auto [ci, truncated] = mine_stream(
            ctx, MineOptions{},
            [&](unsigned level, std::vector<LevelEntry>&& entries, const LevelStats& stats) {
                acc.level_stats.push_back(stats);
                acc.closed += entries.size();
                if (level >= 1) {
                    if (acc.hist_counts.size() < level) acc.hist_counts.resize(level);
                    auto& counts = acc.hist_counts[level - 1];
                    counts.assign(acc.bins.size(), 0);
                    for (const auto& entry : entries)
                        ++counts[acc.bins.bin_of(static_cast<double>(entry.support) / n)];
                }
                for (const auto& entry : entries) {
                    auto& cell = acc.summary[{level, static_cast<unsigned>(entry.closed.count())}];
                    cell[0] += 1.0;
                    cell[1] += static_cast<double>(entry.support);
                    cell[2] += static_cast<double>(entry.support)
                               * static_cast<double>(entry.support);
                }
                if (options.verbose)
                    std::fprintf(stderr, "  %s level %u: %zu closed, %zu trie nodes, %.2fs\n",
                                 e.name, level, entries.size(), stats.trie_nodes, stats.seconds);
            });
        acc.ci = ci;
        acc.truncated = truncated;
        r.ci = ci;
        r.closed = acc.closed;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                        .count();

        std::string detail;
        auto check = [&detail](const char* what, std::uint64_t got, std::uint64_t want) {
            if (got == want) return;
            if (!detail.empty()) detail += ", ";
            detail += std::string(what) + "=" + std::to_string(got) + " (expected "
                      + std::to_string(want) + ")";
        };
        check("objects", r.objects, e.objects);
        check("attributes", r.attributes, e.attributes);
        check("ci", r.ci, e.ci);
        check("closed", r.closed, e.closed);
        r.pass = detail.empty();
        r.detail = std::move(detail);

        if (options.report_dir) {
            const Report report = analytics_report(ctx, acc);
            write_report_tables(report, *options.report_dir / e.name);
        }
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace gdpm::survey
