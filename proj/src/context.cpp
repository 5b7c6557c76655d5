#include "gdpm/context.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace gdpm {

namespace {

std::vector<std::string> positional_names(std::size_t n, const char* stem) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back(stem + std::to_string(i));
    return names;
}

std::string format_number(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool parse_double(const std::string& raw, double& out) {
    const std::string s = trim(raw);
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

}  // namespace

FormalContext FormalContext::from_rows(std::size_t attribute_count,
                                       const std::vector<std::vector<std::uint32_t>>& row_ids,
                                       std::vector<std::string> object_names,
                                       std::vector<std::string> attribute_names) {
    FormalContext ctx;
    ctx.rows_.reserve(row_ids.size());
    ctx.cols_.assign(attribute_count, ObjectSet(row_ids.size()));
    for (std::size_t g = 0; g < row_ids.size(); ++g) {
        ItemSet row(attribute_count);
        for (auto m : row_ids[g]) {
            row.set(m);  // throws if m is outside the attribute universe
            ctx.cols_[m].set(static_cast<std::uint32_t>(g));
        }
        ctx.rows_.push_back(std::move(row));
    }
    if (object_names.empty())
        object_names = positional_names(row_ids.size(), "");
    else if (object_names.size() != row_ids.size())
        throw std::invalid_argument("object name count does not match row count");
    if (attribute_names.empty())
        attribute_names = positional_names(attribute_count, "");
    else if (attribute_names.size() != attribute_count)
        throw std::invalid_argument("attribute name count does not match attribute count");
    ctx.object_names_ = std::move(object_names);
    ctx.attribute_names_ = std::move(attribute_names);
    return ctx;
}

std::size_t FormalContext::incidence_count() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.count();
    return n;
}

double FormalContext::density() const {
    const std::size_t cells = object_count() * attribute_count();
    return cells == 0 ? 0.0 : static_cast<double>(incidence_count()) / static_cast<double>(cells);
}

ObjectSet extent(const FormalContext& ctx, const ItemSet& items) {
    if (items.universe() != ctx.attribute_count())
        throw std::invalid_argument("itemset universe does not match context attribute count");
    ObjectSet out = ctx.all_objects();
    items.for_each([&](std::uint32_t m) { out.intersect_with(ctx.col(m)); });
    return out;
}

ItemSet intent(const FormalContext& ctx, const ObjectSet& objects) {
    if (objects.universe() != ctx.object_count())
        throw std::invalid_argument("object set universe does not match context object count");
    ItemSet out = ctx.all_attributes();
    objects.for_each([&](std::uint32_t g) { out.intersect_with(ctx.row(g)); });
    return out;
}

ItemSet closure(const FormalContext& ctx, const ItemSet& items) {
    return intent(ctx, extent(ctx, items));
}

std::pair<ObjectSet, ItemSet> closure_with_extent(const FormalContext& ctx, const ItemSet& items) {
    ObjectSet ext = extent(ctx, items);
    ItemSet clo = intent(ctx, ext);
    return {std::move(ext), std::move(clo)};
}

FormalContext sample_objects(const FormalContext& ctx, const ObjectSet& keep) {
    if (keep.universe() != ctx.object_count())
        throw std::invalid_argument("sample universe does not match context object count");
    std::vector<std::vector<std::uint32_t>> rows;
    std::vector<std::string> names;
    keep.for_each([&](std::uint32_t g) {
        rows.push_back(ctx.row(g).ids());
        names.push_back(ctx.object_name(g));
    });
    return FormalContext::from_rows(ctx.attribute_count(), rows, std::move(names),
                                    ctx.attribute_names());
}

FormalContext contranominal(std::size_t n) {
    if (n == 0) throw std::invalid_argument("contranominal scale needs at least one element");
    std::vector<std::vector<std::uint32_t>> rows(n);
    for (std::size_t g = 0; g < n; ++g)
        for (std::uint32_t m = 0; m < n; ++m)
            if (m != g) rows[g].push_back(m);
    return FormalContext::from_rows(n, rows);
}

FormalContext many_keys_context(std::size_t n) {
    if (n == 0) throw std::invalid_argument("many_keys_context needs n >= 1");
    const std::size_t attrs = 2 * n + 1;
    std::vector<std::vector<std::uint32_t>> rows(n + 1);
    for (std::uint32_t m = 0; m < attrs; ++m) rows[0].push_back(m);
    for (std::size_t g = 1; g <= n; ++g)
        for (std::uint32_t m = 0; m < attrs; ++m)
            if (m != 0 && m != g && m != n + g) rows[g].push_back(m);
    std::vector<std::string> object_names, attribute_names;
    for (std::size_t g = 0; g <= n; ++g) object_names.push_back("g" + std::to_string(g));
    for (std::size_t m = 0; m < attrs; ++m) attribute_names.push_back("m" + std::to_string(m));
    return FormalContext::from_rows(attrs, rows, std::move(object_names),
                                    std::move(attribute_names));
}

FormalContext sort_attributes_by_frequency(const FormalContext& ctx) {
    std::vector<std::uint32_t> order(ctx.attribute_count());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return ctx.col(a).count() > ctx.col(b).count();
    });
    std::vector<std::uint32_t> new_id(ctx.attribute_count());
    std::vector<std::string> attr_names(ctx.attribute_count());
    for (std::uint32_t pos = 0; pos < order.size(); ++pos) {
        new_id[order[pos]] = pos;
        attr_names[pos] = ctx.attribute_name(order[pos]);
    }
    std::vector<std::vector<std::uint32_t>> rows(ctx.object_count());
    for (std::size_t g = 0; g < ctx.object_count(); ++g)
        ctx.row(g).for_each([&](std::uint32_t m) { rows[g].push_back(new_id[m]); });
    return FormalContext::from_rows(ctx.attribute_count(), rows, ctx.object_names(),
                                    std::move(attr_names));
}

namespace {

struct GeneratedAttribute {
    std::size_t column;
    std::string name;
    // interval attributes
    double lo = 0.0, hi = 0.0;
    bool hi_inclusive = false;
    // value attributes
    std::string value;
    bool by_value = false;
};

void append_interval_attributes(std::size_t col, const std::string& col_name,
                                const std::vector<std::pair<double, double>>& intervals,
                                bool last_inclusive, std::vector<GeneratedAttribute>& out) {
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        auto [lo, hi] = intervals[i];
        if (!(lo < hi) && !(last_inclusive && i + 1 == intervals.size() && lo == hi))
            throw std::invalid_argument("column \"" + col_name + "\": interval ["
                                        + format_number(lo) + "," + format_number(hi)
                                        + ") is empty or reversed");
        if (i > 0 && intervals[i - 1].second > lo)
            throw std::invalid_argument("column \"" + col_name + "\": intervals overlap or are out of order");
        GeneratedAttribute a;
        a.column = col;
        a.lo = lo;
        a.hi = hi;
        a.hi_inclusive = last_inclusive && i + 1 == intervals.size();
        a.name = col_name + "[" + format_number(lo) + "," + format_number(hi)
                 + (a.hi_inclusive ? "]" : ")");
        out.push_back(std::move(a));
    }
}

}  // namespace

FormalContext binarize(const ManyValuedTable& table, const BinarizationConfig& config) {
    const std::size_t ncols = table.column_names.size();
    for (const auto& row : table.rows)
        if (row.size() != ncols)
            throw std::runtime_error("table row has " + std::to_string(row.size())
                                     + " cells, expected " + std::to_string(ncols));

    std::vector<GeneratedAttribute> attrs;
    std::vector<std::map<std::string, std::uint32_t>> value_index(ncols);
    std::vector<ColumnRule::Kind> kinds(ncols);

    for (std::size_t c = 0; c < ncols; ++c) {
        const std::string& col_name = table.column_names[c];
        auto it = config.columns.find(col_name);
        if (it == config.columns.end())
            throw std::runtime_error("no scaling rule for column \"" + col_name + "\"");
        const ColumnRule& rule = it->second;
        kinds[c] = rule.kind;
        switch (rule.kind) {
            case ColumnRule::Kind::intervals:
                if (rule.intervals.empty())
                    throw std::invalid_argument("column \"" + col_name + "\": no intervals given");
                append_interval_attributes(c, col_name, rule.intervals, false, attrs);
                break;
            case ColumnRule::Kind::equal_width: {
                if (rule.bins == 0)
                    throw std::invalid_argument("column \"" + col_name + "\": needs at least one bin");
                double lo = 0.0, hi = 0.0;
                bool seen = false;
                for (std::size_t r = 0; r < table.rows.size(); ++r) {
                    double v;
                    if (!parse_double(table.rows[r][c], v))
                        throw std::runtime_error("row " + std::to_string(r) + ", column \""
                                                 + col_name + "\": value \"" + table.rows[r][c]
                                                 + "\" is not numeric");
                    lo = seen ? std::min(lo, v) : v;
                    hi = seen ? std::max(hi, v) : v;
                    seen = true;
                }
                if (!seen)
                    throw std::runtime_error("column \"" + col_name
                                             + "\": cannot derive bins from an empty table");
                std::vector<std::pair<double, double>> intervals;
                const double width = (hi - lo) / rule.bins;
                for (unsigned b = 0; b < rule.bins; ++b)
                    intervals.emplace_back(lo + width * b,
                                           b + 1 == rule.bins ? hi : lo + width * (b + 1));
                append_interval_attributes(c, col_name, intervals, true, attrs);
                break;
            }
            case ColumnRule::Kind::values_auto: {
                std::vector<std::string> distinct;
                for (const auto& row : table.rows) {
                    std::string v = trim(row[c]);
                    if (std::find(distinct.begin(), distinct.end(), v) == distinct.end())
                        distinct.push_back(v);
                }
                // numeric sort when every value parses, lexicographic otherwise
                bool numeric = !distinct.empty();
                for (const auto& v : distinct) {
                    double d;
                    if (!parse_double(v, d)) { numeric = false; break; }
                }
                std::sort(distinct.begin(), distinct.end(),
                          [&](const std::string& a, const std::string& b) {
                              if (numeric) {
                                  double da, db;
                                  parse_double(a, da);
                                  parse_double(b, db);
                                  if (da != db) return da < db;
                              }
                              return a < b;
                          });
                for (const auto& v : distinct) {
                    value_index[c][v] = static_cast<std::uint32_t>(attrs.size());
                    GeneratedAttribute a;
                    a.column = c;
                    a.by_value = true;
                    a.value = v;
                    a.name = col_name + "=" + v;
                    attrs.push_back(std::move(a));
                }
                break;
            }
            case ColumnRule::Kind::values_list:
                if (rule.values.empty())
                    throw std::invalid_argument("column \"" + col_name + "\": no values listed");
                for (const auto& v : rule.values) {
                    if (value_index[c].count(v))
                        throw std::invalid_argument("column \"" + col_name + "\": value \"" + v
                                                    + "\" listed twice");
                    value_index[c][v] = static_cast<std::uint32_t>(attrs.size());
                    GeneratedAttribute a;
                    a.column = c;
                    a.by_value = true;
                    a.value = v;
                    a.name = col_name + "=" + v;
                    attrs.push_back(std::move(a));
                }
                break;
        }
    }

    // Interval attributes of one column are contiguous; remember each
    // column's span so a cell only scans its own intervals.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> span(ncols, {0, 0});
    for (std::uint32_t i = 0; i < attrs.size(); ++i) {
        auto& s = span[attrs[i].column];
        if (s.second == 0) s.first = i;
        s.second = i + 1;
    }

    std::vector<std::vector<std::uint32_t>> rows(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        for (std::size_t c = 0; c < ncols; ++c) {
            const std::string cell = trim(table.rows[r][c]);
            const std::string row_label =
                r < table.row_names.size() ? table.row_names[r] : std::to_string(r);
            if (kinds[c] == ColumnRule::Kind::values_auto
                || kinds[c] == ColumnRule::Kind::values_list) {
                auto hit = value_index[c].find(cell);
                if (hit == value_index[c].end())
                    throw std::runtime_error("row " + row_label + ", column \""
                                             + table.column_names[c] + "\": value \"" + cell
                                             + "\" is not covered by the scaling rule");
                rows[r].push_back(hit->second);
            } else {
                double v;
                if (!parse_double(cell, v))
                    throw std::runtime_error("row " + row_label + ", column \""
                                             + table.column_names[c] + "\": value \"" + cell
                                             + "\" is not numeric");
                bool placed = false;
                for (std::uint32_t i = span[c].first; i < span[c].second; ++i) {
                    const auto& a = attrs[i];
                    if (v >= a.lo && (v < a.hi || (a.hi_inclusive && v == a.hi))) {
                        rows[r].push_back(i);
                        placed = true;
                        break;
                    }
                }
                if (!placed)
                    throw std::runtime_error("row " + row_label + ", column \""
                                             + table.column_names[c] + "\": value "
                                             + format_number(v)
                                             + " is not covered by any interval");
            }
        }
    }

    std::vector<std::string> attr_names;
    attr_names.reserve(attrs.size());
    for (const auto& a : attrs) attr_names.push_back(a.name);
    return FormalContext::from_rows(attrs.size(), rows, table.row_names, std::move(attr_names));
}

}  // namespace gdpm
