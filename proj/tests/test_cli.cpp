#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "gdpm/cli.hpp"
#include "gdpm/io.hpp"

using namespace gdpm;
namespace fs = std::filesystem;

namespace {

fs::path make_temp_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("gdpm-cli-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& content) {
    fs::path p = dir / name;
    std::ofstream out(p);
    out << content;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

struct CliResult {
    int status = 0;
    std::string out;
    std::string err;
};

// The command handlers write through stdio, so capture at the fd level.
CliResult run(const std::vector<std::string>& args) {
    static int counter = 0;
    fs::path dir = fs::temp_directory_path() / "gdpm-cli-capture";
    fs::create_directories(dir);
    fs::path out_path = dir / ("out." + std::to_string(counter));
    fs::path err_path = dir / ("err." + std::to_string(counter));
    ++counter;

    std::fflush(stdout);
    std::fflush(stderr);
    int saved_out = dup(1);
    int saved_err = dup(2);
    {
        FILE* o = std::freopen(out_path.c_str(), "w", stdout);
        FILE* e = std::freopen(err_path.c_str(), "w", stderr);
        REQUIRE(o != nullptr);
        REQUIRE(e != nullptr);
    }

    CliResult r;
    r.status = run_cli(args);

    std::fflush(stdout);
    std::fflush(stderr);
    dup2(saved_out, 1);
    dup2(saved_err, 2);
    close(saved_out);
    close(saved_err);

    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

fs::path example_file(const fs::path& dir) {
    return write_file(dir, "example.txt", "0 1 2\n0 2 3\n0 3 4\n2 3\n1 3 4 5\n1 4 5\n");
}

fs::path example_names(const fs::path& dir) {
    return write_file(dir, "names.txt", "a\nb\nc\nd\ne\nf\n");
}

}  // namespace

TEST_CASE("stats prints the dataset and the size bounds") {
    auto dir = make_temp_dir("stats");
    auto data = example_file(dir);

    auto r = run({"stats", "-i", data.string()});
    CHECK(r.status == 0);
    CHECK(contains(r.out, "objects=6"));
    CHECK(contains(r.out, "attributes=6"));
    CHECK(contains(r.out, "closed=16"));
    CHECK(contains(r.out, "CI=3; 8 <= 16 <= 64"));
}

TEST_CASE("mine writes a report") {
    auto dir = make_temp_dir("mine");
    auto data = example_file(dir);
    auto out = dir / "report.json";

    auto r = run({"mine", "-i", data.string(), "--names",
                  example_names(dir).string(), "--output", out.string()});
    CHECK(r.status == 0);
    CHECK(contains(r.out, "ci=3"));
    CHECK(contains(r.out, "closed=16"));

    Report rep = load_report_json(out);
    CHECK(rep.objects == 6);
    CHECK(rep.ci == 3);
    CHECK(rep.attribute_names.back() == "f");
    REQUIRE(rep.levels.size() == 4);
    CHECK(rep.levels[2].size() == 8);
    CHECK_FALSE(rep.truncated);
}

TEST_CASE("mine honors the level cap") {
    auto dir = make_temp_dir("kmax");
    auto data = example_file(dir);
    auto out = dir / "capped.json";

    auto r = run({"mine", "-i", data.string(), "--kmax", "1", "--output", out.string()});
    CHECK(r.status == 0);
    CHECK(contains(r.out, "lower bound"));

    Report rep = load_report_json(out);
    CHECK(rep.truncated);
    CHECK(rep.ci == 1);
    CHECK(rep.ci_lower_bound_only);
    REQUIRE(rep.k_max.has_value());
    CHECK(*rep.k_max == 1);
    CHECK(rep.levels.size() == 2);
    CHECK_FALSE(rep.bounds.has_value());
}

TEST_CASE("both variants produce identical structures") {
    auto dir = make_temp_dir("variants");
    auto data = example_file(dir);
    auto a = dir / "int.json";
    auto b = dir / "ext.json";

    CHECK(run({"mine", "-i", data.string(), "--variant", "int", "--output", a.string()}).status
          == 0);
    CHECK(run({"mine", "-i", data.string(), "--variant", "ext", "--output", b.string()}).status
          == 0);

    Report ra = load_report_json(a);
    Report rb = load_report_json(b);
    CHECK(ra.variant == "int");
    CHECK(rb.variant == "ext");
    CHECK(ra.levels == rb.levels);
    CHECK(ra.ci == rb.ci);
    CHECK(ra.trie_nodes == 21);  // intent trie:16 sets over shared prefixes
}

TEST_CASE("analyze attaches the requested sections") {
    auto dir = make_temp_dir("analyze");
    auto data = example_file(dir);
    auto labels = write_file(dir, "labels.txt", "x\nx\nx\ny\ny\ny\n");
    auto out = dir / "analysis.json";
    auto tables = dir / "tables";

    auto r = run({"analyze", "-i", data.string(), "--names", example_names(dir).string(),
                  "--labels", labels.string(), "--output", out.string(), "--tables",
                  tables.string()});
    CHECK(r.status == 0);

    Report rep = load_report_json(out);
    REQUIRE(rep.histogram.has_value());
    CHECK(rep.histogram->rows[0].counts == std::vector<std::uint64_t>{0, 1, 4, 1, 0});
    REQUIRE(rep.attribute_frequency_list.has_value());
    CHECK(rep.attribute_frequency_list->front().name == "f");
    REQUIRE(rep.coverage_levels.has_value());
    CHECK((*rep.coverage_levels)[1].coverage == 1.0);
    REQUIRE(rep.coverage_all.has_value());
    CHECK(rep.coverage_all->coverage == 1.0);
    REQUIRE(rep.f1.has_value());
    CHECK_FALSE(rep.rules.has_value());  // rules come from their own subcommand
    REQUIRE(rep.summary.has_value());

    CHECK(fs::exists(tables / "levels.tsv"));
    CHECK(fs::exists(tables / "f1.tsv"));
    CHECK_FALSE(fs::exists(tables / "rules.tsv"));
}

TEST_CASE("analyze without labels skips the f1 section") {
    auto dir = make_temp_dir("nolabels");
    auto data = example_file(dir);
    auto out = dir / "analysis.json";

    auto r = run({"analyze", "-i", data.string(), "--output", out.string()});
    CHECK(r.status == 0);
    Report rep = load_report_json(out);
    CHECK_FALSE(rep.f1.has_value());
    REQUIRE(rep.histogram.has_value());
}

TEST_CASE("custom bin edges reach the histogram") {
    auto dir = make_temp_dir("edges");
    auto data = example_file(dir);
    auto out = dir / "edges.json";

    auto r = run({"analyze", "-i", data.string(), "--edges", "0,0.5,1", "--output", out.string()});
    CHECK(r.status == 0);
    Report rep = load_report_json(out);
    REQUIRE(rep.histogram.has_value());
    CHECK(rep.histogram->bins.edges == std::vector<double>{0.0, 0.5, 1.0});
    // level 1 frequencies: bef at 1/3 stays below 0.5; a,b,c,e at exactly
    // 0.5 land in the closed upper bin together with d at 2/3
    CHECK(rep.histogram->rows[0].counts == std::vector<std::uint64_t>{1, 5});
}

TEST_CASE("rules subcommand prints readable implications") {
    auto dir = make_temp_dir("rules");
    auto data = example_file(dir);

    auto r = run({"rules", "-i", data.string(), "--names", example_names(dir).string(),
                  "--min-support", "2"});
    CHECK(r.status == 0);
    CHECK(contains(r.out, "f => b,e  support=2 confidence=1 lift=3"));
    CHECK_FALSE(contains(r.out, "a,b => c"));
    CHECK(contains(r.err, "1 rule"));

    auto top = run({"rules", "-i", data.string(), "--names", example_names(dir).string(),
                    "--top", "2"});
    CHECK(top.status == 0);
    CHECK(contains(top.out, "f => b,e"));
    CHECK(contains(top.out, "b,d => e,f"));
    CHECK_FALSE(contains(top.out, "a,e => d"));
}

TEST_CASE("csv input needs a binarization config") {
    auto dir = make_temp_dir("csvcli");
    auto data = write_file(dir, "t.csv", "s1,s2\n1,x\n2,y\n");

    auto r = run({"mine", "-i", data.string()});
    CHECK(r.status == 2);
    CHECK(contains(r.err, "error:"));

    auto cfg = write_file(dir, "cfg.json",
                          R"({"s1": {"values": "auto"}, "s2": {"values": "auto"}})");
    auto ok = run({"mine", "-i", data.string(), "--binarize-config", cfg.string()});
    CHECK(ok.status == 0);
    CHECK(contains(ok.out, "attributes=4"));
}

TEST_CASE("sampling is reproducible") {
    auto dir = make_temp_dir("sample");
    auto data = example_file(dir);

    auto a = run({"sample", "--fraction", "0.5", "--seed", "7", "mine", "-i", data.string()});
    auto b = run({"sample", "--fraction", "0.5", "--seed", "7", "mine", "-i", data.string()});
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(contains(a.err, "sampled 3 of 6 objects"));

    auto c = run({"sample", "--fraction", "0.5", "--seed", "8", "mine", "-i", data.string()});
    CHECK(c.status == 0);  // a different seed may pick different objects but still runs
}

TEST_CASE("sampling by explicit keep list") {
    auto dir = make_temp_dir("keep");
    auto data = example_file(dir);

    auto r = run({"sample", "--keep", "0,1,2,3", "stats", "-i", data.string()});
    CHECK(r.status == 0);
    CHECK(contains(r.out, "objects=4"));
    CHECK(contains(r.out, "CI=3; 8 <= 11 <= 16"));

    auto bad = run({"sample", "--keep", "0,9", "stats", "-i", data.string()});
    CHECK(bad.status == 2);
}

TEST_CASE("attribute reordering by frequency is exposed") {
    auto dir = make_temp_dir("order");
    auto data = example_file(dir);
    auto out = dir / "ordered.json";

    auto r = run({"mine", "-i", data.string(), "--names", example_names(dir).string(),
                  "--order", "freq-desc", "--output", out.string()});
    CHECK(r.status == 0);
    Report rep = load_report_json(out);
    CHECK(rep.attribute_names
          == std::vector<std::string>{"d", "a", "b", "c", "e", "f"});
    CHECK(rep.ci == 3);  // renaming attributes cannot change the structure depth
}

TEST_CASE("warnings land on stderr") {
    auto dir = make_temp_dir("warn");
    auto data = write_file(dir, "dup.txt", "0 0 1\n1 2\n");

    auto r = run({"stats", "-i", data.string()});
    CHECK(r.status == 0);
    CHECK(contains(r.err, "warning: line 1: duplicate item 0 ignored"));
}

TEST_CASE("usage and failure exit codes") {
    auto dir = make_temp_dir("exit");

    auto usage = run({"mine", "--no-such-flag"});
    CHECK(usage.status == 1);

    auto missing = run({"mine", "-i", (dir / "absent.txt").string()});
    CHECK(missing.status == 2);
    CHECK(contains(missing.err, "error:"));

    auto help = run({"--help"});
    CHECK(help.status == 0);
    CHECK(contains(help.out, "mine"));
    CHECK(contains(help.out, "sample"));
}
