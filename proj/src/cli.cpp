#include "gdpm/cli.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "gdpm/analysis.hpp"
#include "gdpm/context.hpp"
#include "gdpm/io.hpp"
#include "gdpm/mining.hpp"

namespace gdpm {

namespace {

struct CommonOpts {
    std::string input;
    std::string format = "auto";
    std::string names_file;
    std::string binarize_config;
    std::string label_column;
    std::string labels_file;
    std::string order = "input";
    std::string variant = "int";
    std::int64_t k_max = -1;  // negative: no cap
    std::uint64_t max_extent = kNoExtentLimit;
    std::string output;
    std::string tables;
};

void add_io_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("-i,--input", o.input, "input dataset")->required();
    cmd->add_option("--format", o.format, "input format (default: by extension)")
        ->check(CLI::IsMember({"auto", "transactions", "csv"}));
    cmd->add_option("--names", o.names_file, "attribute names, one per line (transactions)");
    cmd->add_option("--binarize-config", o.binarize_config, "scaling rules for csv columns");
    cmd->add_option("--label-column", o.label_column, "csv column holding class labels");
    auto* labels = cmd->add_option("--labels", o.labels_file, "class labels, one per line");
    labels->excludes(cmd->get_option("--label-column"));
    cmd->add_option("--order", o.order, "attribute order before mining")
        ->check(CLI::IsMember({"input", "freq-desc"}));
    cmd->add_option("--output", o.output, "write a JSON report here");
    cmd->add_option("--tables", o.tables, "write per-section tables into this directory");
    cmd->add_option("--max-extent", o.max_extent,
                    "elide extents larger than this from reports");
}

void add_mining_options(CLI::App* cmd, CommonOpts& o, bool with_kmax = true) {
    cmd->add_option("--variant", o.variant, "duplicate test keyed by intents or extents")
        ->check(CLI::IsMember({"int", "ext"}));
    if (with_kmax)
        cmd->add_option("--kmax", o.k_max, "stop after this level (structure truncated)");
}

struct LoadedData {
    FormalContext ctx;
    std::vector<std::uint32_t> labels;
    bool has_labels = false;
    std::vector<std::string> warnings;
};

LoadedData load_data(const CommonOpts& o) {
    std::string format = o.format;
    if (format == "auto")
        format = std::filesystem::path(o.input).extension() == ".csv" ? "csv" : "transactions";

    LoadedData data;
    if (format == "csv") {
        if (o.binarize_config.empty())
            throw std::runtime_error("csv input needs --binarize-config");
        auto loaded = load_csv(o.input, load_binarization_config(o.binarize_config),
                               o.label_column);
        data.ctx = std::move(loaded.ctx);
        data.warnings = std::move(loaded.warnings);
        data.labels = std::move(loaded.labels);
        data.has_labels = loaded.has_labels;
    } else {
        std::optional<std::filesystem::path> names;
        if (!o.names_file.empty()) names = o.names_file;
        auto loaded = load_transactions(o.input, names);
        data.ctx = std::move(loaded.ctx);
        data.warnings = std::move(loaded.warnings);
    }

    if (!o.labels_file.empty()) {
        data.labels = load_labels(o.labels_file).first;
        data.has_labels = true;
    }
    if (data.has_labels && data.labels.size() != data.ctx.object_count())
        throw std::runtime_error("label count (" + std::to_string(data.labels.size())
                                 + ") does not match object count ("
                                 + std::to_string(data.ctx.object_count()) + ")");

    if (o.order == "freq-desc") data.ctx = sort_attributes_by_frequency(data.ctx);
    return data;
}

MineOptions mine_options(const CommonOpts& o) {
    MineOptions opts;
    opts.variant = o.variant == "ext" ? Variant::extents : Variant::intents;
    opts.k_max = o.k_max < 0 ? kNoLevelCap : static_cast<unsigned>(o.k_max);
    return opts;
}

Report base_report(const FormalContext& ctx, const ClosureStructure& s, const CommonOpts& o) {
    Report r = make_report(ctx, s, o.max_extent);
    if (o.k_max >= 0) r.k_max = static_cast<unsigned>(o.k_max);
    return r;
}

void emit_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

void write_outputs(const Report& report, const CommonOpts& o) {
    if (!o.output.empty()) write_report_json(report, o.output);
    if (!o.tables.empty()) write_report_tables(report, o.tables);
}

std::string pow2_string(unsigned exponent) {
    if (exponent < 64) return std::to_string(std::uint64_t{1} << exponent);
    return "2^" + std::to_string(exponent);
}

int cmd_mine(const LoadedData& data, const CommonOpts& o) {
    const ClosureStructure s = mine(data.ctx, mine_options(o));
    const Report report = base_report(data.ctx, s, o);
    write_outputs(report, o);

    std::printf("objects=%zu attributes=%zu incidences=%zu density=%g\n",
                data.ctx.object_count(), data.ctx.attribute_count(),
                data.ctx.incidence_count(), data.ctx.density());
    std::printf("variant=%s closed=%" PRIu64 " ci=%u%s\n", to_string(s.variant),
                s.closed_count(), s.ci, s.truncated ? " (lower bound, run truncated)" : "");
    for (std::size_t k = 0; k < s.levels.size(); ++k)
        std::printf("level %zu: %zu closed\n", k, s.levels[k].size());
    return 0;
}

int cmd_stats(const LoadedData& data, const CommonOpts& o) {
    const ClosureStructure s = mine(data.ctx, mine_options(o));
    const SizeBounds b = size_bounds(s, data.ctx);
    std::printf("objects=%zu attributes=%zu incidences=%zu density=%g\n",
                data.ctx.object_count(), data.ctx.attribute_count(),
                data.ctx.incidence_count(), data.ctx.density());
    std::printf("closed=%" PRIu64 " levels=%zu variant=%s\n", s.closed_count(), s.levels.size(),
                to_string(s.variant));
    std::printf("CI=%u; %s <= %" PRIu64 " <= %s\n", s.ci, pow2_string(b.lower_exponent).c_str(),
                b.actual, pow2_string(b.upper_exponent).c_str());
    if (!o.output.empty() || !o.tables.empty()) {
        const Report report = base_report(data.ctx, s, o);
        write_outputs(report, o);
    }
    return 0;
}

struct AnalyzeOpts {
    unsigned bins = 5;
    std::vector<double> edges;
    std::uint64_t min_support = 1;
    std::uint64_t top = 0;  // 0: all
};

BinSpec bin_spec(const AnalyzeOpts& a) {
    if (!a.edges.empty()) {
        BinSpec spec;
        spec.edges = a.edges;
        spec.validate();
        return spec;
    }
    return BinSpec::uniform(a.bins);
}

int cmd_analyze(const LoadedData& data, const CommonOpts& o, const AnalyzeOpts& a) {
    const ClosureStructure s = mine(data.ctx, mine_options(o));
    const BinSpec bins = bin_spec(a);

    Report report = base_report(data.ctx, s, o);
    report.histogram = frequency_bins(s, data.ctx, bins);
    report.attribute_frequency_list = attribute_frequencies(data.ctx);
    report.coverage_levels = coverage_by_level(s, data.ctx);
    report.coverage_all = coverage_union(s, data.ctx);
    if (data.has_labels) report.f1 = f1_by_level(s, data.ctx, data.labels, bins);
    report.summary = level_summary(s);
    write_outputs(report, o);

    std::printf("closed=%" PRIu64 " ci=%u%s\n", s.closed_count(), s.ci,
                s.truncated ? " (lower bound, run truncated)" : "");
    std::printf("support frequency by level:\n");
    for (const auto& row : report.histogram->rows) {
        std::printf("  level %u: entries=%" PRIu64 " share=%.4g", row.level, row.entries,
                    row.level_share);
        for (std::size_t b = 0; b < row.counts.size(); ++b)
            std::printf(" | %s %" PRIu64 " (%.3g%%)", bins.label(b).c_str(), row.counts[b],
                        row.percents[b]);
        std::printf("\n");
    }
    std::printf("coverage:\n");
    for (const auto& c : *report.coverage_levels)
        std::printf("  level %u: coverage=%.6g overlap=%.6g(sd %.6g)\n", c.level, c.coverage,
                    c.overlap_mean, c.overlap_std);
    const auto& u = *report.coverage_all;
    std::printf("  union: coverage=%.6g overlap=%.6g(sd %.6g)\n", u.coverage, u.overlap_mean,
                u.overlap_std);
    if (report.f1) std::printf("f1 cells: %zu (level x frequency bin)\n", report.f1->size());
    return 0;
}

int cmd_rules(const LoadedData& data, const CommonOpts& o, const AnalyzeOpts& a) {
    const ClosureStructure s = mine(data.ctx, mine_options(o));
    RuleSet rs = implications(s, data.ctx, a.min_support);
    if (a.top > 0 && rs.rules.size() > a.top) rs.rules.resize(a.top);

    Report report = base_report(data.ctx, s, o);
    report.rules = rs;
    write_outputs(report, o);

    const auto& names = data.ctx.attribute_names();
    auto join = [&](const ItemSet& set) {
        std::string out;
        set.for_each([&](std::uint32_t id) {
            if (!out.empty()) out += ",";
            out += names[id];
        });
        return out;
    };
    for (const auto& rule : rs.rules)
        std::printf("%s => %s  support=%" PRIu64 " confidence=%g lift=%g\n",
                    join(rule.antecedent).c_str(), join(rule.consequent).c_str(), rule.support,
                    rule.confidence, rule.lift(rs.object_count));
    std::fprintf(stderr, "%zu rules (min support %" PRIu64 ")\n", rs.rules.size(),
                 a.min_support);
    return 0;
}

struct SampleOpts {
    std::vector<std::uint32_t> keep;
    double fraction = -1.0;
    std::uint64_t seed = 0;
};

// Unbiased bounded draw on top of the engine's raw 64-bit output; written
// out by hand because the standard distributions may differ across
// implementations and sampling must reproduce bit-for-bit everywhere.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    for (;;) {
        const std::uint64_t x = rng();
        const std::uint64_t r = x % n;
        if (x - r <= std::numeric_limits<std::uint64_t>::max() - (n - 1)) return r;
    }
}

LoadedData apply_sample(LoadedData data, const SampleOpts& so) {
    const std::size_t n = data.ctx.object_count();
    ObjectSet keep(n);
    if (!so.keep.empty()) {
        for (auto g : so.keep) keep.set(g);  // throws past the last object
    } else if (so.fraction >= 0.0) {
        if (so.fraction > 1.0) throw std::runtime_error("--fraction must be within [0,1]");
        std::vector<std::uint32_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
        std::mt19937_64 rng(so.seed);
        const auto k = static_cast<std::size_t>(std::llround(so.fraction * static_cast<double>(n)));
        for (std::size_t i = 0; i < k && i + 1 < n; ++i)
            std::swap(order[i], order[i + bounded(rng, n - i)]);
        for (std::size_t i = 0; i < k; ++i) keep.set(order[i]);
    } else {
        throw std::runtime_error("sample needs --keep or --fraction");
    }

    LoadedData out;
    out.ctx = sample_objects(data.ctx, keep);
    out.warnings = std::move(data.warnings);
    out.has_labels = data.has_labels;
    if (data.has_labels)
        keep.for_each([&](std::uint32_t g) { out.labels.push_back(data.labels[g]); });
    std::fprintf(stderr, "sampled %zu of %zu objects\n", out.ctx.object_count(), n);
    return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"level-wise closure structure miner"};
    app.require_subcommand(1);

    CommonOpts mine_o, stats_o, analyze_o, rules_o;
    AnalyzeOpts analyze_a, rules_a;

    auto* mine_cmd = app.add_subcommand("mine", "compute the closure structure");
    add_io_options(mine_cmd, mine_o);
    add_mining_options(mine_cmd, mine_o);

    auto* stats_cmd = app.add_subcommand("stats", "closure index and size bounds");
    add_io_options(stats_cmd, stats_o);
    add_mining_options(stats_cmd, stats_o, false);

    auto* analyze_cmd = app.add_subcommand("analyze", "histograms, coverage, F1 by level");
    add_io_options(analyze_cmd, analyze_o);
    add_mining_options(analyze_cmd, analyze_o);
    analyze_cmd->add_option("--bins", analyze_a.bins, "equal-width frequency bins");
    analyze_cmd->add_option("--edges", analyze_a.edges, "explicit bin edges")->delimiter(',');

    auto* rules_cmd = app.add_subcommand("rules", "exact implications from passkeys");
    add_io_options(rules_cmd, rules_o);
    add_mining_options(rules_cmd, rules_o, false);
    rules_cmd->add_option("--min-support", rules_a.min_support, "drop rules below this support");
    rules_cmd->add_option("--top", rules_a.top, "print only the strongest rules");

    auto* sample_cmd = app.add_subcommand("sample", "run a subcommand on an object sample");
    SampleOpts sample_o;
    sample_cmd->add_option("--keep", sample_o.keep, "object ids to keep")->delimiter(',');
    sample_cmd->add_option("--fraction", sample_o.fraction, "fraction of objects to keep");
    sample_cmd->add_option("--seed", sample_o.seed, "sampling seed");
    sample_cmd->require_subcommand(1);

    CommonOpts s_mine_o, s_stats_o, s_analyze_o, s_rules_o;
    AnalyzeOpts s_analyze_a, s_rules_a;
    auto* s_mine = sample_cmd->add_subcommand("mine", "compute the closure structure");
    add_io_options(s_mine, s_mine_o);
    add_mining_options(s_mine, s_mine_o);
    auto* s_stats = sample_cmd->add_subcommand("stats", "closure index and size bounds");
    add_io_options(s_stats, s_stats_o);
    add_mining_options(s_stats, s_stats_o, false);
    auto* s_analyze = sample_cmd->add_subcommand("analyze", "histograms, coverage, F1 by level");
    add_io_options(s_analyze, s_analyze_o);
    add_mining_options(s_analyze, s_analyze_o);
    s_analyze->add_option("--bins", s_analyze_a.bins, "equal-width frequency bins");
    s_analyze->add_option("--edges", s_analyze_a.edges, "explicit bin edges")->delimiter(',');
    auto* s_rules = sample_cmd->add_subcommand("rules", "exact implications from passkeys");
    add_io_options(s_rules, s_rules_o);
    add_mining_options(s_rules, s_rules_o, false);
    s_rules->add_option("--min-support", s_rules_a.min_support, "drop rules below this support");
    s_rules->add_option("--top", s_rules_a.top, "print only the strongest rules");

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.push_back("gdpm");
    for (const auto& a : args) argv_storage.push_back(a);
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*mine_cmd) {
            auto data = load_data(mine_o);
            emit_warnings(data.warnings);
            return cmd_mine(data, mine_o);
        }
        if (*stats_cmd) {
            auto data = load_data(stats_o);
            emit_warnings(data.warnings);
            return cmd_stats(data, stats_o);
        }
        if (*analyze_cmd) {
            auto data = load_data(analyze_o);
            emit_warnings(data.warnings);
            return cmd_analyze(data, analyze_o, analyze_a);
        }
        if (*rules_cmd) {
            auto data = load_data(rules_o);
            emit_warnings(data.warnings);
            return cmd_rules(data, rules_o, rules_a);
        }
        if (*sample_cmd) {
            if (*s_mine) {
                auto data = apply_sample(load_data(s_mine_o), sample_o);
                emit_warnings(data.warnings);
                return cmd_mine(data, s_mine_o);
            }
            if (*s_stats) {
                auto data = apply_sample(load_data(s_stats_o), sample_o);
                emit_warnings(data.warnings);
                return cmd_stats(data, s_stats_o);
            }
            if (*s_analyze) {
                auto data = apply_sample(load_data(s_analyze_o), sample_o);
                emit_warnings(data.warnings);
                return cmd_analyze(data, s_analyze_o, s_analyze_a);
            }
            if (*s_rules) {
                auto data = apply_sample(load_data(s_rules_o), sample_o);
                emit_warnings(data.warnings);
                return cmd_rules(data, s_rules_o, s_rules_a);
            }
        }
        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

}  // namespace gdpm
