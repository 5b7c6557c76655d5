#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "fixtures.hpp"
#include "gdpm/mining.hpp"
#include "gdpm/oracle.hpp"

using namespace gdpm;

namespace {

struct Expected {
    ItemSet closed;
    ItemSet passkey;
    ObjectSet ext;
    std::uint64_t support;
};

void check_level(const std::vector<LevelEntry>& got, const std::vector<Expected>& want) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        CAPTURE(i);
        CHECK(got[i].closed == want[i].closed);
        CHECK(got[i].passkey == want[i].passkey);
        CHECK(got[i].ext == want[i].ext);
        CHECK(got[i].support == want[i].support);
    }
}

void check_same_structure(const ClosureStructure& a, const ClosureStructure& b) {
    CHECK(a.ci == b.ci);
    CHECK(a.truncated == b.truncated);
    REQUIRE(a.levels.size() == b.levels.size());
    for (std::size_t k = 0; k < a.levels.size(); ++k) {
        REQUIRE(a.levels[k].size() == b.levels[k].size());
        for (std::size_t i = 0; i < a.levels[k].size(); ++i) {
            CHECK(a.levels[k][i].closed == b.levels[k][i].closed);
            CHECK(a.levels[k][i].passkey == b.levels[k][i].passkey);
            CHECK(a.levels[k][i].ext == b.levels[k][i].ext);
            CHECK(a.levels[k][i].support == b.levels[k][i].support);
        }
    }
}

// Levels must partition the oracle's ground truth, entry by entry.
void check_against_oracle(const FormalContext& ctx, const ClosureStructure& s) {
    auto gt = oracle::ground_truth(ctx);
    REQUIRE(s.levels.size() == gt.levels.size());
    for (std::size_t k = 0; k < s.levels.size(); ++k) {
        std::vector<ItemSet> got;
        for (const auto& e : s.levels[k]) got.push_back(e.closed);
        std::sort(got.begin(), got.end(), [](const ItemSet& x, const ItemSet& y) {
            return x.count() != y.count() ? x.count() < y.count() : x.lex_less(y);
        });
        CHECK(got == gt.levels[k]);
    }
    for (const auto& level : s.levels)
        for (const auto& e : level) {
            CHECK(e.passkey.count() == gt.level_of.at(e.closed));
            CHECK(closure(ctx, e.passkey) == e.closed);
            CHECK(extent(ctx, e.closed) == e.ext);
            CHECK(e.support == e.ext.count());
        }
}

}  // namespace

TEST_CASE("closure structure of the running example") {
    auto ctx = fixtures::running_example();

    for (auto variant : {Variant::intents, Variant::extents}) {
        CAPTURE(to_string(variant));
        auto s = mine(ctx, {variant, kNoLevelCap});

        CHECK(s.ci == 1 + 1 + 1);  // deepest level below
        CHECK(s.ci == 3);
        CHECK_FALSE(s.truncated);
        CHECK(s.closed_count() == 16);
        CHECK(s.variant == variant);
        REQUIRE(s.levels.size() == 4);

        check_level(s.levels[0],
                    {{fixtures::items(6, {}), fixtures::items(6, {}),
                      ObjectSet::full(6), 6}});

        check_level(
            s.levels[1],
            {
                {fixtures::items(6, {0}), fixtures::items(6, {0}), fixtures::objects(6, {0, 1, 2}), 3},
                {fixtures::items(6, {1}), fixtures::items(6, {1}), fixtures::objects(6, {0, 4, 5}), 3},
                {fixtures::items(6, {2}), fixtures::items(6, {2}), fixtures::objects(6, {0, 1, 3}), 3},
                {fixtures::items(6, {3}), fixtures::items(6, {3}), fixtures::objects(6, {1, 2, 3, 4}), 4},
                {fixtures::items(6, {4}), fixtures::items(6, {4}), fixtures::objects(6, {2, 4, 5}), 3},
                {fixtures::items(6, {1, 4, 5}), fixtures::items(6, {5}), fixtures::objects(6, {4, 5}), 2},
            });

        check_level(
            s.levels[2],
            {
                {fixtures::items(6, {0, 1, 2}), fixtures::items(6, {0, 1}), fixtures::objects(6, {0}), 1},
                {fixtures::items(6, {0, 2}), fixtures::items(6, {0, 2}), fixtures::objects(6, {0, 1}), 2},
                {fixtures::items(6, {0, 3}), fixtures::items(6, {0, 3}), fixtures::objects(6, {1, 2}), 2},
                {fixtures::items(6, {0, 3, 4}), fixtures::items(6, {0, 4}), fixtures::objects(6, {2}), 1},
                {fixtures::items(6, {0, 1, 2, 3, 4, 5}), fixtures::items(6, {0, 5}), fixtures::objects(6, {}), 0},
                {fixtures::items(6, {1, 3, 4, 5}), fixtures::items(6, {1, 3}), fixtures::objects(6, {4}), 1},
                {fixtures::items(6, {2, 3}), fixtures::items(6, {2, 3}), fixtures::objects(6, {1, 3}), 2},
                {fixtures::items(6, {3, 4}), fixtures::items(6, {3, 4}), fixtures::objects(6, {2, 4}), 2},
            });

        check_level(s.levels[3],
                    {{fixtures::items(6, {0, 2, 3}), fixtures::items(6, {0, 2, 3}),
                      fixtures::objects(6, {1}), 1}});

        CHECK(s.level_stats.size() == 4);
        CHECK(s.level_stats[1].entries == 6);
        CHECK(s.level_stats[2].entries == 8);
        check_against_oracle(ctx, s);
    }
}

TEST_CASE("both variants emit identical structures") {
    std::mt19937_64 rng(321);
    for (int round = 0; round < 40; ++round) {
        auto ctx = fixtures::random_context(rng, 10, 9);
        auto si = mine(ctx, {Variant::intents, kNoLevelCap});
        auto se = mine(ctx, {Variant::extents, kNoLevelCap});
        check_same_structure(si, se);
        check_against_oracle(ctx, si);
    }
}

TEST_CASE("level cap truncates and marks the result") {
    auto ctx = fixtures::running_example();
    auto s = mine(ctx, {Variant::intents, 1});
    CHECK(s.truncated);
    CHECK(s.ci == 1);
    REQUIRE(s.levels.size() == 2);
    CHECK(s.levels[1].size() == 6);
    CHECK(s.closed_count() == 7);

    auto idx = closure_index(s);
    CHECK(idx.value == 1);
    CHECK(idx.lower_bound_only);

    CHECK_THROWS_AS(size_bounds(s, ctx), std::invalid_argument);

    // a cap equal to the true index finds everything but still flags
    // truncation: the frontier past the last level was never expanded
    auto s3 = mine(ctx, {Variant::intents, 3});
    CHECK(s3.truncated);
    CHECK(s3.ci == 3);
    CHECK(s3.closed_count() == 16);
    // a cap above the true index is never reached
    auto s9 = mine(ctx, {Variant::extents, 9});
    CHECK_FALSE(s9.truncated);
    CHECK(s9.ci == 3);
}

TEST_CASE("contranominal scale fills every level") {
    for (std::size_t n : {1u, 2u, 3u, 5u, 8u}) {
        CAPTURE(n);
        auto ctx = contranominal(n);
        auto s = mine(ctx);
        CHECK(s.ci == n);
        CHECK(s.closed_count() == (std::uint64_t{1} << n));
        REQUIRE(s.levels.size() == n + 1);
        std::uint64_t binom = 1;
        for (std::size_t k = 0; k <= n; ++k) {
            CHECK(s.levels[k].size() == binom);
            binom = binom * (n - k) / (k + 1);
            for (const auto& e : s.levels[k]) {
                CHECK(e.closed == e.passkey);  // every itemset is closed here
                CHECK(e.closed.count() == k);
            }
        }

        auto b = size_bounds(s, ctx);
        CHECK(b.lower_exponent == n);
        CHECK(b.upper_exponent == n);
        CHECK(b.actual == (std::uint64_t{1} << n));
        CHECK(b.lower == doctest::Approx(b.upper));
    }
}

TEST_CASE("sampled structures of the running example") {
    auto full = fixtures::running_example();

    SUBCASE("objects g1..g4 keep acd at level 3") {
        auto ctx = sample_objects(full, fixtures::objects(6, {0, 1, 2, 3}));
        auto s = mine(ctx);
        CHECK(s.ci == 3);
        CHECK(s.closed_count() == 11);

        check_level(s.levels[1],
                    {
                        {fixtures::items(6, {0}), fixtures::items(6, {0}), fixtures::objects(4, {0, 1, 2}), 3},
                        {fixtures::items(6, {0, 1, 2}), fixtures::items(6, {1}), fixtures::objects(4, {0}), 1},
                        {fixtures::items(6, {2}), fixtures::items(6, {2}), fixtures::objects(4, {0, 1, 3}), 3},
                        {fixtures::items(6, {3}), fixtures::items(6, {3}), fixtures::objects(4, {1, 2, 3}), 3},
                        {fixtures::items(6, {0, 3, 4}), fixtures::items(6, {4}), fixtures::objects(4, {2}), 1},
                        {fixtures::items(6, {0, 1, 2, 3, 4, 5}), fixtures::items(6, {5}), fixtures::objects(4, {}), 0},
                    });
        check_level(s.levels[2],
                    {
                        {fixtures::items(6, {0, 2}), fixtures::items(6, {0, 2}), fixtures::objects(4, {0, 1}), 2},
                        {fixtures::items(6, {0, 3}), fixtures::items(6, {0, 3}), fixtures::objects(4, {1, 2}), 2},
                        {fixtures::items(6, {2, 3}), fixtures::items(6, {2, 3}), fixtures::objects(4, {1, 3}), 2},
                    });
        check_level(s.levels[3],
                    {{fixtures::items(6, {0, 2, 3}), fixtures::items(6, {0, 2, 3}),
                      fixtures::objects(4, {1}), 1}});
    }

    SUBCASE("objects g1,g2,g3,g5 pull acd down to level 2") {
        auto ctx = sample_objects(full, fixtures::objects(6, {0, 1, 2, 4}));
        auto s = mine(ctx);
        CHECK(s.ci == 2);
        CHECK(s.closed_count() == 12);

        check_level(s.levels[1],
                    {
                        {fixtures::items(6, {0}), fixtures::items(6, {0}), fixtures::objects(4, {0, 1, 2}), 3},
                        {fixtures::items(6, {1}), fixtures::items(6, {1}), fixtures::objects(4, {0, 3}), 2},
                        {fixtures::items(6, {0, 2}), fixtures::items(6, {2}), fixtures::objects(4, {0, 1}), 2},
                        {fixtures::items(6, {3}), fixtures::items(6, {3}), fixtures::objects(4, {1, 2, 3}), 3},
                        {fixtures::items(6, {3, 4}), fixtures::items(6, {4}), fixtures::objects(4, {2, 3}), 2},
                        {fixtures::items(6, {1, 3, 4, 5}), fixtures::items(6, {5}), fixtures::objects(4, {3}), 1},
                    });
        check_level(s.levels[2],
                    {
                        {fixtures::items(6, {0, 1, 2}), fixtures::items(6, {0, 1}), fixtures::objects(4, {0}), 1},
                        {fixtures::items(6, {0, 3}), fixtures::items(6, {0, 3}), fixtures::objects(4, {1, 2}), 2},
                        {fixtures::items(6, {0, 3, 4}), fixtures::items(6, {0, 4}), fixtures::objects(4, {2}), 1},
                        {fixtures::items(6, {0, 1, 2, 3, 4, 5}), fixtures::items(6, {0, 5}), fixtures::objects(4, {}), 0},
                        {fixtures::items(6, {0, 2, 3}), fixtures::items(6, {2, 3}), fixtures::objects(4, {1}), 1},
                    });

        // the closed itemset acd sits at level 3 in the full context but at
        // level 2 in this sample
        auto gt_full = oracle::ground_truth(full);
        CHECK(gt_full.level_of.at(fixtures::items(6, {0, 2, 3})) == 3);
        auto gt_sample = oracle::ground_truth(ctx);
        CHECK(gt_sample.level_of.at(fixtures::items(6, {0, 2, 3})) == 2);
    }
}

TEST_CASE("sampling never invents closed itemsets and never raises levels") {
    std::mt19937_64 rng(777);
    for (int round = 0; round < 60; ++round) {
        auto full = fixtures::random_context(rng, 9, 7);
        ObjectSet keep(full.object_count());
        for (std::uint32_t g = 0; g < full.object_count(); ++g)
            if (fixtures::bounded(rng, 2)) keep.set(g);
        if (keep.empty()) keep.set(static_cast<std::uint32_t>(
            fixtures::bounded(rng, full.object_count())));

        auto sub = sample_objects(full, keep);
        auto gt_full = oracle::ground_truth(full);
        auto gt_sub = oracle::ground_truth(sub);

        for (const auto& [closed, level] : gt_sub.level_of) {
            auto it = gt_full.level_of.find(closed);
            REQUIRE_MESSAGE(it != gt_full.level_of.end(),
                            "closed in the sample but not in the full context");
            CHECK(level <= it->second);
        }
    }
}

TEST_CASE("degenerate contexts") {
    SUBCASE("an attribute shared by every object lands in level 0") {
        auto ctx = FormalContext::from_rows(3, {{0, 1}, {0, 2}, {0}});
        auto s = mine(ctx);
        CHECK(s.levels[0][0].closed == fixtures::items(3, {0}));
        CHECK(s.levels[0][0].passkey == ItemSet(3));
        CHECK(s.levels[0][0].support == 3);
        check_against_oracle(ctx, s);
    }
    SUBCASE("no objects") {
        auto ctx = FormalContext::from_rows(2, {});
        auto s = mine(ctx);
        CHECK(s.ci == 0);
        CHECK(s.closed_count() == 1);
        CHECK(s.levels[0][0].closed == ItemSet::full(2));  // intent of nothing is everything
        CHECK(s.levels[0][0].support == 0);
    }
    SUBCASE("no attributes") {
        auto ctx = FormalContext::from_rows(0, {{}, {}});
        auto s = mine(ctx);
        CHECK(s.ci == 0);
        CHECK(s.closed_count() == 1);
        CHECK(s.levels[0][0].support == 2);
    }
    SUBCASE("identical objects") {
        auto ctx = FormalContext::from_rows(3, {{0, 2}, {0, 2}});
        auto s = mine(ctx);
        CHECK(s.levels[0][0].closed == fixtures::items(3, {0, 2}));
        // the only other closed itemset is the full attribute set
        CHECK(s.closed_count() == 2);
        CHECK(s.ci == 1);
        check_against_oracle(ctx, s);
    }
}

TEST_CASE("mining is deterministic") {
    std::mt19937_64 rng(5);
    auto ctx = fixtures::random_context(rng, 10, 9);
    auto a = mine(ctx, {Variant::intents, kNoLevelCap});
    auto b = mine(ctx, {Variant::intents, kNoLevelCap});
    check_same_structure(a, b);
}

TEST_CASE("streaming agrees with collecting") {
    auto ctx = fixtures::running_example();
    auto collected = mine(ctx);

    std::vector<std::vector<LevelEntry>> streamed;
    std::vector<LevelStats> stats;
    auto [ci, truncated] =
        mine_stream(ctx, {Variant::extents, kNoLevelCap},
                    [&](unsigned level, std::vector<LevelEntry>&& entries, const LevelStats& st) {
                        CHECK(level == streamed.size());
                        streamed.push_back(std::move(entries));
                        stats.push_back(st);
                    });

    CHECK(ci == collected.ci);
    CHECK_FALSE(truncated);
    REQUIRE(streamed.size() == collected.levels.size());
    for (std::size_t k = 0; k < streamed.size(); ++k) {
        REQUIRE(streamed[k].size() == collected.levels[k].size());
        for (std::size_t i = 0; i < streamed[k].size(); ++i)
            CHECK(streamed[k][i].closed == collected.levels[k][i].closed);
        CHECK(stats[k].entries == streamed[k].size());
    }
}

TEST_CASE("trie accounting matches the stored intents") {
    auto ctx = fixtures::running_example();
    auto s = mine(ctx, {Variant::intents, kNoLevelCap});
    // 16 intents stored as ascending id sequences share 21 trie nodes
    CHECK(s.trie_nodes == 21);
    CHECK(s.level_stats.back().trie_nodes == 21);
}

TEST_CASE("size bounds on the running example") {
    auto ctx = fixtures::running_example();
    auto s = mine(ctx);
    auto b = size_bounds(s, ctx);
    CHECK(b.lower_exponent == 3);
    CHECK(b.upper_exponent == 6);
    CHECK(b.lower == doctest::Approx(8.0));
    CHECK(b.upper == doctest::Approx(64.0));
    CHECK(b.actual == 16);
}
