#include "gdpm/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gdpm {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> read_lines(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

bool parse_u32(const std::string& token, std::uint32_t& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

bool parse_double_str(const std::string& raw, double& out) {
    const std::string s = trim(raw);
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

std::pair<std::vector<std::uint32_t>, std::vector<std::string>> encode_labels(
    const std::vector<std::string>& raw) {
    std::vector<std::string> distinct;
    for (const auto& v : raw)
        if (std::find(distinct.begin(), distinct.end(), v) == distinct.end())
            distinct.push_back(v);
    bool numeric = !distinct.empty();
    for (const auto& v : distinct) {
        double d;
        if (!parse_double_str(v, d)) { numeric = false; break; }
    }
    std::sort(distinct.begin(), distinct.end(), [&](const std::string& a, const std::string& b) {
        if (numeric) {
            double da, db;
            parse_double_str(a, da);
            parse_double_str(b, db);
            if (da != db) return da < db;
        }
        return a < b;
    });
    std::vector<std::uint32_t> ids;
    ids.reserve(raw.size());
    for (const auto& v : raw) {
        auto it = std::find(distinct.begin(), distinct.end(), v);
        ids.push_back(static_cast<std::uint32_t>(it - distinct.begin()));
    }
    return {std::move(ids), std::move(distinct)};
}

}  // namespace

TransactionLoadResult load_transactions(const std::filesystem::path& file,
                                        const std::optional<std::filesystem::path>& names_file) {
    TransactionLoadResult result;
    const auto lines = read_lines(file);

    std::vector<std::string> names;
    if (names_file) {
        names = read_lines(*names_file);
        while (!names.empty() && trim(names.back()).empty()) names.pop_back();
        for (auto& n : names) n = trim(n);
    }

    std::vector<std::vector<std::uint32_t>> rows;
    std::uint32_t max_id = 0;
    bool any_id = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto tokens = split_ws(lines[i]);
        if (tokens.empty()) continue;  // token-less lines carry no object
        std::vector<std::uint32_t> ids;
        for (const auto& tok : tokens) {
            std::uint32_t id;
            if (!parse_u32(tok, id))
                throw std::runtime_error(file.string() + ": line " + std::to_string(i + 1)
                                         + ": token \"" + tok
                                         + "\" is not a non-negative integer");
            if (std::find(ids.begin(), ids.end(), id) != ids.end()) {
                result.warnings.push_back("line " + std::to_string(i + 1) + ": duplicate item "
                                          + std::to_string(id) + " ignored");
                continue;
            }
            ids.push_back(id);
            max_id = std::max(max_id, id);
            any_id = true;
        }
        rows.push_back(std::move(ids));
    }

    std::size_t attribute_count = any_id ? max_id + 1 : 0;
    if (!names.empty()) {
        if (attribute_count > names.size())
            throw std::runtime_error(file.string() + ": item id " + std::to_string(max_id)
                                     + " exceeds the " + std::to_string(names.size())
                                     + " names provided");
        attribute_count = names.size();
    }
    if (rows.empty()) result.warnings.push_back("empty input: the context has no objects");

    result.ctx = FormalContext::from_rows(attribute_count, rows, {}, std::move(names));
    return result;
}

ManyValuedTable read_csv(const std::filesystem::path& file) {
    const auto lines = read_lines(file);
    ManyValuedTable table;
    bool have_header = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        auto cells = split_csv_line(lines[i]);
        if (!have_header) {
            table.column_names = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != table.column_names.size())
            throw std::runtime_error(file.string() + ": line " + std::to_string(i + 1)
                                     + ": expected " + std::to_string(table.column_names.size())
                                     + " cells, found " + std::to_string(cells.size()));
        table.rows.push_back(std::move(cells));
    }
    if (!have_header) throw std::runtime_error(file.string() + ": missing header row");
    return table;
}

CsvLoadResult load_csv(const std::filesystem::path& file, const BinarizationConfig& config,
                       const std::string& label_column) {
    ManyValuedTable table = read_csv(file);
    CsvLoadResult result;

    if (!label_column.empty()) {
        auto it = std::find(table.column_names.begin(), table.column_names.end(), label_column);
        if (it == table.column_names.end())
            throw std::runtime_error(file.string() + ": no column named \"" + label_column + "\"");
        const std::size_t idx = static_cast<std::size_t>(it - table.column_names.begin());
        std::vector<std::string> raw;
        raw.reserve(table.rows.size());
        for (auto& row : table.rows) {
            raw.push_back(row[idx]);
            row.erase(row.begin() + static_cast<std::ptrdiff_t>(idx));
        }
        table.column_names.erase(table.column_names.begin() + static_cast<std::ptrdiff_t>(idx));
        std::tie(result.labels, result.label_names) = encode_labels(raw);
        result.has_labels = true;
    }

    result.ctx = binarize(table, config);
    return result;
}

BinarizationConfig load_binarization_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error(file.string() + ": " + e.what());
    }
    if (!j.is_object()) throw std::runtime_error(file.string() + ": expected a JSON object");

    BinarizationConfig config;
    for (const auto& [column, spec] : j.items()) {
        if (!spec.is_object())
            throw std::runtime_error(file.string() + ": rule for \"" + column
                                     + "\" must be an object");
        ColumnRule rule;
        if (spec.contains("intervals")) {
            rule.kind = ColumnRule::Kind::intervals;
            for (const auto& iv : spec.at("intervals")) {
                if (!iv.is_array() || iv.size() != 2)
                    throw std::runtime_error(file.string() + ": \"" + column
                                             + "\": each interval needs exactly two numbers");
                rule.intervals.emplace_back(iv.at(0).get<double>(), iv.at(1).get<double>());
            }
        } else if (spec.contains("equal_width")) {
            rule.kind = ColumnRule::Kind::equal_width;
            rule.bins = spec.at("equal_width").get<unsigned>();
        } else if (spec.contains("values")) {
            const auto& values = spec.at("values");
            if (values.is_string() && values.get<std::string>() == "auto") {
                rule.kind = ColumnRule::Kind::values_auto;
            } else if (values.is_array()) {
                rule.kind = ColumnRule::Kind::values_list;
                for (const auto& v : values) {
                    if (v.is_string())
                        rule.values.push_back(v.get<std::string>());
                    else {
                        char buf[48];
                        std::snprintf(buf, sizeof buf, "%g", v.get<double>());
                        rule.values.emplace_back(buf);
                    }
                }
            } else {
                throw std::runtime_error(file.string() + ": \"" + column
                                         + "\": values must be \"auto\" or a list");
            }
        } else {
            throw std::runtime_error(file.string() + ": \"" + column
                                     + "\": expected intervals, equal_width, or values");
        }
        config.columns[column] = std::move(rule);
    }
    return config;
}

std::pair<std::vector<std::uint32_t>, std::vector<std::string>> load_labels(
    const std::filesystem::path& file) {
    std::vector<std::string> raw;
    for (const auto& line : read_lines(file)) {
        const std::string v = trim(line);
        if (!v.empty()) raw.push_back(v);
    }
    return encode_labels(raw);
}

// --- report ----------------------------------------------------------------

Report make_report(const FormalContext& ctx, const ClosureStructure& s,
                   std::size_t extent_limit) {
    Report r;
    r.objects = ctx.object_count();
    r.attributes = ctx.attribute_count();
    r.incidences = ctx.incidence_count();
    r.density = ctx.density();
    r.attribute_names = ctx.attribute_names();

    r.variant = to_string(s.variant);
    r.truncated = s.truncated;
    r.mining_levels = s.level_stats;
    r.trie_nodes = s.trie_nodes;

    const auto ci = closure_index(s);
    r.ci = ci.value;
    r.ci_lower_bound_only = ci.lower_bound_only;

    r.levels.reserve(s.levels.size());
    for (const auto& level : s.levels) {
        std::vector<ReportEntry> out;
        out.reserve(level.size());
        for (const auto& e : level) {
            ReportEntry re;
            re.closed = e.closed.ids();
            re.passkey = e.passkey.ids();
            re.support = e.support;
            if (e.ext.count() <= extent_limit) re.ext = e.ext.ids();
            out.push_back(std::move(re));
        }
        r.levels.push_back(std::move(out));
    }

    if (!s.truncated) r.bounds = size_bounds(s, ctx);
    return r;
}

namespace {

json stats_to_json(const LevelStats& s) {
    return {{"entries", s.entries}, {"trie_nodes", s.trie_nodes}, {"seconds", s.seconds}};
}

LevelStats stats_from_json(const json& j) {
    LevelStats s;
    s.entries = j.at("entries").get<std::size_t>();
    s.trie_nodes = j.at("trie_nodes").get<std::size_t>();
    s.seconds = j.at("seconds").get<double>();
    return s;
}

json entry_to_json(const ReportEntry& e) {
    json j{{"closed", e.closed}, {"passkey", e.passkey}, {"support", e.support}};
    if (e.ext) j["extent"] = *e.ext;
    return j;
}

ReportEntry entry_from_json(const json& j) {
    ReportEntry e;
    e.closed = j.at("closed").get<std::vector<std::uint32_t>>();
    e.passkey = j.at("passkey").get<std::vector<std::uint32_t>>();
    e.support = j.at("support").get<std::uint64_t>();
    if (j.contains("extent")) e.ext = j.at("extent").get<std::vector<std::uint32_t>>();
    return e;
}

json report_to_json_value(const Report& r) {
    json j;
    j["schema_version"] = r.schema_version;
    j["dataset"] = {{"objects", r.objects},
                    {"attributes", r.attributes},
                    {"incidences", r.incidences},
                    {"density", r.density},
                    {"attribute_names", r.attribute_names}};
    json mining{{"variant", r.variant},
                {"truncated", r.truncated},
                {"trie_nodes", r.trie_nodes}};
    mining["k_max"] = r.k_max ? json(*r.k_max) : json(nullptr);
    mining["levels"] = json::array();
    for (const auto& s : r.mining_levels) mining["levels"].push_back(stats_to_json(s));
    j["mining"] = std::move(mining);

    json structure{{"ci", r.ci}, {"ci_lower_bound_only", r.ci_lower_bound_only}};
    structure["levels"] = json::array();
    for (const auto& level : r.levels) {
        json jl = json::array();
        for (const auto& e : level) jl.push_back(entry_to_json(e));
        structure["levels"].push_back(std::move(jl));
    }
    j["structure"] = std::move(structure);

    if (r.bounds)
        j["bounds"] = {{"lower_exponent", r.bounds->lower_exponent},
                       {"upper_exponent", r.bounds->upper_exponent},
                       {"actual", r.bounds->actual}};

    json analysis = json::object();
    if (r.histogram) {
        json rows = json::array();
        for (const auto& row : r.histogram->rows)
            rows.push_back({{"level", row.level},
                            {"entries", row.entries},
                            {"counts", row.counts},
                            {"percents", row.percents},
                            {"level_share", row.level_share}});
        analysis["histogram"] = {{"edges", r.histogram->bins.edges},
                                 {"closed_count", r.histogram->closed_count},
                                 {"rows", std::move(rows)}};
    }
    if (r.attribute_frequency_list) {
        json rows = json::array();
        for (const auto& f : *r.attribute_frequency_list)
            rows.push_back({{"attribute", f.attribute},
                            {"name", f.name},
                            {"support", f.support},
                            {"frequency", f.frequency}});
        analysis["attribute_frequencies"] = std::move(rows);
    }
    auto coverage_to_json = [](const CoverageRow& c) {
        return json{{"level", c.level},
                    {"covered", c.covered},
                    {"coverage", c.coverage},
                    {"overlap_mean", c.overlap_mean},
                    {"overlap_std", c.overlap_std}};
    };
    if (r.coverage_levels) {
        json rows = json::array();
        for (const auto& c : *r.coverage_levels) rows.push_back(coverage_to_json(c));
        analysis["coverage_levels"] = std::move(rows);
    }
    if (r.coverage_all) analysis["coverage_union"] = coverage_to_json(*r.coverage_all);
    if (r.f1) {
        json rows = json::array();
        for (const auto& c : *r.f1)
            rows.push_back({{"level", c.level},
                            {"bin", c.bin},
                            {"entries", c.entries},
                            {"mean_f1", c.mean_f1}});
        analysis["f1"] = std::move(rows);
    }
    if (r.rules) {
        json rows = json::array();
        for (const auto& rule : r.rules->rules)
            rows.push_back({{"antecedent", rule.antecedent.ids()},
                            {"consequent", rule.consequent.ids()},
                            {"support", rule.support},
                            {"consequent_support", rule.consequent_support},
                            {"confidence", rule.confidence},
                            {"lift", rule.lift(r.rules->object_count)}});
        analysis["rules"] = {{"object_count", r.rules->object_count}, {"rules", std::move(rows)}};
    }
    if (r.summary) {
        json levels = json::array();
        for (const auto& by_size : r.summary->by_level) {
            json cells = json::array();
            for (const auto& [size, cell] : by_size)
                cells.push_back({{"size", size},
                                 {"count", cell.count},
                                 {"mean_support", cell.mean_support},
                                 {"std_support", cell.std_support}});
            levels.push_back(std::move(cells));
        }
        analysis["level_summary"] = std::move(levels);
    }
    if (!analysis.empty()) j["analysis"] = std::move(analysis);
    return j;
}

Report report_from_json_value(const json& j) {
    Report r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != Report::current_schema)
        throw std::runtime_error("unsupported report schema version "
                                 + std::to_string(r.schema_version));
    const json& dataset = j.at("dataset");
    r.objects = dataset.at("objects").get<std::uint64_t>();
    r.attributes = dataset.at("attributes").get<std::uint64_t>();
    r.incidences = dataset.at("incidences").get<std::uint64_t>();
    r.density = dataset.at("density").get<double>();
    r.attribute_names = dataset.at("attribute_names").get<std::vector<std::string>>();

    const json& mining = j.at("mining");
    r.variant = mining.at("variant").get<std::string>();
    if (!mining.at("k_max").is_null()) r.k_max = mining.at("k_max").get<unsigned>();
    r.truncated = mining.at("truncated").get<bool>();
    r.trie_nodes = mining.at("trie_nodes").get<std::size_t>();
    for (const auto& s : mining.at("levels")) r.mining_levels.push_back(stats_from_json(s));

    const json& structure = j.at("structure");
    r.ci = structure.at("ci").get<unsigned>();
    r.ci_lower_bound_only = structure.at("ci_lower_bound_only").get<bool>();
    for (const auto& jl : structure.at("levels")) {
        std::vector<ReportEntry> level;
        for (const auto& je : jl) level.push_back(entry_from_json(je));
        r.levels.push_back(std::move(level));
    }

    if (j.contains("bounds")) {
        SizeBounds b;
        b.lower_exponent = j.at("bounds").at("lower_exponent").get<unsigned>();
        b.upper_exponent = j.at("bounds").at("upper_exponent").get<unsigned>();
        b.actual = j.at("bounds").at("actual").get<std::uint64_t>();
        b.lower = std::ldexp(1.0, static_cast<int>(b.lower_exponent));
        b.upper = std::ldexp(1.0, static_cast<int>(b.upper_exponent));
        r.bounds = b;
    }

    if (!j.contains("analysis")) return r;
    const json& analysis = j.at("analysis");
    if (analysis.contains("histogram")) {
        FrequencyHistogram h;
        h.bins.edges = analysis.at("histogram").at("edges").get<std::vector<double>>();
        h.closed_count = analysis.at("histogram").at("closed_count").get<std::uint64_t>();
        for (const auto& jr : analysis.at("histogram").at("rows")) {
            HistogramRow row;
            row.level = jr.at("level").get<unsigned>();
            row.entries = jr.at("entries").get<std::uint64_t>();
            row.counts = jr.at("counts").get<std::vector<std::uint64_t>>();
            row.percents = jr.at("percents").get<std::vector<double>>();
            row.level_share = jr.at("level_share").get<double>();
            h.rows.push_back(std::move(row));
        }
        r.histogram = std::move(h);
    }
    if (analysis.contains("attribute_frequencies")) {
        std::vector<AttributeFrequency> rows;
        for (const auto& jf : analysis.at("attribute_frequencies")) {
            AttributeFrequency f;
            f.attribute = jf.at("attribute").get<std::uint32_t>();
            f.name = jf.at("name").get<std::string>();
            f.support = jf.at("support").get<std::uint64_t>();
            f.frequency = jf.at("frequency").get<double>();
            rows.push_back(std::move(f));
        }
        r.attribute_frequency_list = std::move(rows);
    }
    auto coverage_from_json = [](const json& jc) {
        CoverageRow c;
        c.level = jc.at("level").get<unsigned>();
        c.covered = jc.at("covered").get<std::uint64_t>();
        c.coverage = jc.at("coverage").get<double>();
        c.overlap_mean = jc.at("overlap_mean").get<double>();
        c.overlap_std = jc.at("overlap_std").get<double>();
        return c;
    };
    if (analysis.contains("coverage_levels")) {
        std::vector<CoverageRow> rows;
        for (const auto& jc : analysis.at("coverage_levels")) rows.push_back(coverage_from_json(jc));
        r.coverage_levels = std::move(rows);
    }
    if (analysis.contains("coverage_union"))
        r.coverage_all = coverage_from_json(analysis.at("coverage_union"));
    if (analysis.contains("f1")) {
        std::vector<F1Cell> cells;
        for (const auto& jc : analysis.at("f1")) {
            F1Cell c;
            c.level = jc.at("level").get<unsigned>();
            c.bin = jc.at("bin").get<std::size_t>();
            c.entries = jc.at("entries").get<std::uint64_t>();
            c.mean_f1 = jc.at("mean_f1").get<double>();
            cells.push_back(c);
        }
        r.f1 = std::move(cells);
    }
    if (analysis.contains("rules")) {
        RuleSet rs;
        rs.object_count = analysis.at("rules").at("object_count").get<std::uint64_t>();
        for (const auto& jr : analysis.at("rules").at("rules")) {
            Rule rule;
            rule.antecedent = ItemSet::of(r.attributes,
                                          jr.at("antecedent").get<std::vector<std::uint32_t>>());
            rule.consequent = ItemSet::of(r.attributes,
                                          jr.at("consequent").get<std::vector<std::uint32_t>>());
            rule.support = jr.at("support").get<std::uint64_t>();
            rule.consequent_support = jr.at("consequent_support").get<std::uint64_t>();
            rule.confidence = jr.at("confidence").get<double>();
            rs.rules.push_back(std::move(rule));
        }
        r.rules = std::move(rs);
    }
    if (analysis.contains("level_summary")) {
        LevelSummary summary;
        for (const auto& jl : analysis.at("level_summary")) {
            std::map<unsigned, SummaryCell> by_size;
            for (const auto& jc : jl) {
                SummaryCell cell;
                cell.count = jc.at("count").get<std::uint64_t>();
                cell.mean_support = jc.at("mean_support").get<double>();
                cell.std_support = jc.at("std_support").get<double>();
                by_size[jc.at("size").get<unsigned>()] = cell;
            }
            summary.by_level.push_back(std::move(by_size));
        }
        r.summary = std::move(summary);
    }
    return r;
}

}  // namespace

std::string report_to_json(const Report& report) {
    return report_to_json_value(report).dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
    return report_from_json_value(json::parse(text));
}

void write_report_json(const Report& report, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << report_to_json(report);
    if (!out) throw std::runtime_error("failed while writing " + file.string());
}

Report load_report_json(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error(file.string() + ": " + e.what());
    }
    return report_from_json_value(j);
}

namespace {

std::string join_names(const std::vector<std::uint32_t>& ids,
                       const std::vector<std::string>& names) {
    std::string out;
    for (auto id : ids) {
        if (!out.empty()) out += ",";
        out += id < names.size() ? names[id] : std::to_string(id);
    }
    return out.empty() ? "{}" : out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::vector<std::filesystem::path> write_report_tables(const Report& report,
                                                       const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto open = [&](const char* name) {
        std::filesystem::path p = dir / name;
        std::ofstream out(p);
        if (!out) throw std::runtime_error("cannot write " + p.string());
        written.push_back(p);
        return out;
    };

    {
        auto out = open("levels.tsv");
        out << "level\tentries\ttrie_nodes\tseconds\n";
        for (std::size_t k = 0; k < report.mining_levels.size(); ++k) {
            const auto& s = report.mining_levels[k];
            out << k << '\t' << s.entries << '\t' << s.trie_nodes << '\t' << fmt(s.seconds)
                << '\n';
        }
    }

    if (report.histogram) {
        auto out = open("histogram.tsv");
        out << "level\tentries\tshare";
        for (std::size_t b = 0; b < report.histogram->bins.size(); ++b)
            out << '\t' << report.histogram->bins.label(b);
        out << '\n';
        for (const auto& row : report.histogram->rows) {
            out << row.level << '\t' << row.entries << '\t' << fmt(row.level_share);
            for (std::size_t b = 0; b < row.counts.size(); ++b)
                out << '\t' << row.counts[b] << " (" << fmt(row.percents[b]) << "%)";
            out << '\n';
        }
    }

    if (report.attribute_frequency_list) {
        auto out = open("attributes.tsv");
        out << "attribute\tname\tsupport\tfrequency\n";
        for (const auto& f : *report.attribute_frequency_list)
            out << f.attribute << '\t' << f.name << '\t' << f.support << '\t' << fmt(f.frequency)
                << '\n';
    }

    if (report.coverage_levels || report.coverage_all) {
        auto out = open("coverage.tsv");
        out << "scope\tcoverage\toverlap_mean\toverlap_std\tcovered\n";
        if (report.coverage_levels)
            for (const auto& c : *report.coverage_levels)
                out << "level " << c.level << '\t' << fmt(c.coverage) << '\t'
                    << fmt(c.overlap_mean) << '\t' << fmt(c.overlap_std) << '\t' << c.covered
                    << '\n';
        if (report.coverage_all) {
            const auto& c = *report.coverage_all;
            out << "union\t" << fmt(c.coverage) << '\t' << fmt(c.overlap_mean) << '\t'
                << fmt(c.overlap_std) << '\t' << c.covered << '\n';
        }
    }

    if (report.f1) {
        BinSpec bins;
        if (report.histogram) bins = report.histogram->bins;
        auto out = open("f1.tsv");
        out << "level\tbin\tentries\tmean_f1\n";
        for (const auto& c : *report.f1) {
            out << c.level << '\t';
            if (c.bin < bins.size())
                out << bins.label(c.bin);
            else
                out << c.bin;
            out << '\t' << c.entries << '\t' << fmt(c.mean_f1) << '\n';
        }
    }

    if (report.rules) {
        auto out = open("rules.tsv");
        out << "antecedents\tconsequents\tsupport\tconfidence\tlift\n";
        for (const auto& rule : report.rules->rules)
            out << join_names(rule.antecedent.ids(), report.attribute_names) << '\t'
                << join_names(rule.consequent.ids(), report.attribute_names) << '\t'
                << rule.support << '\t' << fmt(rule.confidence) << '\t'
                << fmt(rule.lift(report.rules->object_count)) << '\n';
    }

    if (report.summary) {
        auto out = open("level_summary.tsv");
        std::set<unsigned> sizes;
        for (const auto& by_size : report.summary->by_level)
            for (const auto& [size, cell] : by_size) sizes.insert(size);
        out << "level";
        for (auto size : sizes) out << "\tn(s=" << size << ")\tsupport(s=" << size << ")";
        out << '\n';
        for (std::size_t k = 0; k < report.summary->by_level.size(); ++k) {
            out << k;
            for (auto size : sizes) {
                auto it = report.summary->by_level[k].find(size);
                if (it == report.summary->by_level[k].end()) {
                    out << "\t-\t-";
                } else {
                    char buf[64];
                    std::snprintf(buf, sizeof buf, "%.1f±%.1f", it->second.mean_support,
                                  it->second.std_support);
                    out << '\t' << it->second.count << '\t' << buf;
                }
            }
            out << '\n';
        }
    }

    return written;
}

}  // namespace gdpm
