#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gdpm/bitset.hpp"

namespace gdpm {

/// Binary object x attribute incidence table.
///
/// The incidence is stored twice — per object (rows) and per attribute
/// (cols) — so both derivation directions run on contiguous bitsets.
/// Instances are built once and treated as immutable afterwards; every
/// operation on a context is a free function returning fresh values.
class FormalContext {
public:
    FormalContext() = default;

    /// Builds a context from per-object attribute id lists. Names may be
    /// empty, in which case positional names are generated.
    static FormalContext from_rows(std::size_t attribute_count,
                                   const std::vector<std::vector<std::uint32_t>>& row_ids,
                                   std::vector<std::string> object_names = {},
                                   std::vector<std::string> attribute_names = {});

    std::size_t object_count() const { return rows_.size(); }
    std::size_t attribute_count() const { return cols_.size(); }

    const ItemSet& row(std::size_t g) const { return rows_.at(g); }
    const ObjectSet& col(std::size_t m) const { return cols_.at(m); }

    bool incidence(std::uint32_t g, std::uint32_t m) const { return rows_.at(g).test(m); }

    std::size_t incidence_count() const;
    double density() const;

    const std::vector<std::string>& object_names() const { return object_names_; }
    const std::vector<std::string>& attribute_names() const { return attribute_names_; }

    const std::string& object_name(std::uint32_t g) const { return object_names_.at(g); }
    const std::string& attribute_name(std::uint32_t m) const { return attribute_names_.at(m); }

    ObjectSet all_objects() const { return ObjectSet::full(object_count()); }
    ItemSet all_attributes() const { return ItemSet::full(attribute_count()); }

private:
    std::vector<std::string> object_names_;
    std::vector<std::string> attribute_names_;
    std::vector<ItemSet> rows_;    // object -> attributes
    std::vector<ObjectSet> cols_;  // attribute -> objects
};

/// Objects having every attribute in `items`. The empty itemset derives to
/// all objects.
ObjectSet extent(const FormalContext& ctx, const ItemSet& items);

/// Attributes shared by every object in `objects`. The empty object set
/// derives to all attributes.
ItemSet intent(const FormalContext& ctx, const ObjectSet& objects);

/// Closure operator: intent of the extent.
ItemSet closure(const FormalContext& ctx, const ItemSet& items);

/// Extent and intent computed together (single extent pass).
std::pair<ObjectSet, ItemSet> closure_with_extent(const FormalContext& ctx, const ItemSet& items);

/// Subcontext keeping exactly the objects in `keep`; the attribute set is
/// unchanged, so closures of the sample stay comparable to the full context.
FormalContext sample_objects(const FormalContext& ctx, const ObjectSet& keep);

/// Context with n objects and n attributes where object i has every
/// attribute except attribute i. Every subset of attributes is closed.
FormalContext contranominal(std::size_t n);

/// Context on n+1 objects and 2n+1 attributes: object 0 holds all
/// attributes, object i (1-based) misses exactly {0, i, n+i}. The full
/// attribute set has 2^n + 1 minimal generators but, for n >= 2, a single
/// minimum-size one.
FormalContext many_keys_context(std::size_t n);

/// Copy with attributes reordered by descending support; ties keep their
/// original relative order, so the result is deterministic.
FormalContext sort_attributes_by_frequency(const FormalContext& ctx);

// --- binarization of many-valued tables ---------------------------------

/// Raw many-valued table, cells kept as text until a rule interprets them.
struct ManyValuedTable {
    std::vector<std::string> column_names;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row_names;  // optional, positional names otherwise
};

/// How one source column becomes binary attributes.
struct ColumnRule {
    enum class Kind {
        intervals,    // explicit half-open intervals [lo, hi)
        equal_width,  // `bins` equal-width intervals spanning the column range
        values_auto,  // one attribute per distinct value seen
        values_list,  // one attribute per listed value; anything else is an error
    };
    Kind kind = Kind::values_auto;
    std::vector<std::pair<double, double>> intervals;  // kind == intervals
    unsigned bins = 0;                                 // kind == equal_width
    std::vector<std::string> values;                   // kind == values_list
};

struct BinarizationConfig {
    std::map<std::string, ColumnRule> columns;  // keyed by source column name
};

/// Scales a many-valued table to a binary context. Generated attributes
/// follow source column order; within a column, interval order or value
/// order. Each row sets exactly one attribute per column; a cell no rule
/// covers raises an error naming the row and column.
FormalContext binarize(const ManyValuedTable& table, const BinarizationConfig& config);

}  // namespace gdpm
