#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gdpm::survey {

/// Published reference values for one benchmark dataset (transaction files
/// with the class items normalised to the highest ids).
struct Expectation {
    const char* name;
    std::uint64_t objects;
    std::uint64_t attributes;  // after class items are removed
    unsigned classes;          // class items stripped from the tail
    unsigned ci;
    std::uint64_t closed;
    // normalised filename stems this dataset is published under
    std::vector<const char*> aliases;
};

const std::vector<Expectation>& expectations();

struct Options {
    std::vector<std::string> only;  // dataset names; empty = all present
    bool strip_classes = true;
    std::optional<std::filesystem::path> report_dir;  // per-dataset tables
    bool verbose = false;
};

struct Result {
    std::string name;
    std::filesystem::path file;
    bool found = false;
    bool pass = false;
    std::uint64_t objects = 0;
    std::uint64_t attributes = 0;
    unsigned ci = 0;
    std::uint64_t closed = 0;
    double seconds = 0.0;
    std::string detail;  // what differed, when failing
};

/// Looks up every expected dataset in `dir`, recomputes its closure
/// structure with streaming accumulators, and checks objects, attributes,
/// closure index, and closed-itemset count against the published values.
std::vector<Result> run_survey(const std::filesystem::path& dir, const Options& options);

}  // namespace gdpm::survey
