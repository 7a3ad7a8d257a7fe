#include <gtest/gtest.h>

#include "arbo/oracle.hpp"
#include "support.hpp"

using namespace arbo;
using arbo::testing::make;

TEST(Oracle, SmallCompleteGraphs)
{
    EXPECT_EQ(count_arborescences(gen::complete(3).build()), 3);
    EXPECT_EQ(count_arborescences(gen::complete(4).build()), 16);
    EXPECT_EQ(brute_force_enumerate(gen::complete(3).build()).size(), 3u);
    EXPECT_EQ(brute_force_enumerate(gen::complete(4).build()).size(), 16u);
}

TEST(Oracle, CompleteGraphIsCayley)
{
    for (node_id n = 2; n <= 12; ++n) {
        big_count want = 1;
        for (int i = 0; i < n - 2; ++i) want *= n;
        EXPECT_EQ(count_arborescences(gen::complete(n).build()), want) << n;
    }
}

TEST(Oracle, ParallelEdgesCountSeparately)
{
    for (int k = 1; k <= 5; ++k) {
        EXPECT_EQ(count_arborescences(gen::parallel(k).build()), k);
        EXPECT_EQ(brute_force_enumerate(gen::parallel(k).build()).size(), static_cast<std::size_t>(k));
    }
}

TEST(Oracle, BidirectedCycleHasNTrees)
{
    EXPECT_EQ(count_arborescences(gen::bicycle(2).build()), 1);
    for (node_id n = 3; n <= 10; ++n) EXPECT_EQ(count_arborescences(gen::bicycle(n).build()), n);
}

TEST(Oracle, SeriesCyclesMultiply)
{
    // n=9, k=2: two 5-cycles
    EXPECT_EQ(count_arborescences(gen::bipath_cycles(9, 2).build()), 25);
    EXPECT_EQ(brute_force_enumerate(gen::bipath_cycles(9, 2).build()).size(), 25u);
    // n=10, k=3: three 4-cycles
    EXPECT_EQ(count_arborescences(gen::bipath_cycles(10, 3).build()), 64);
}

TEST(Oracle, UnreachableGivesZero)
{
    rooted_digraph g = make(3, 1, {{1, 2}, {3, 2}});
    EXPECT_EQ(count_arborescences(g), 0);
    EXPECT_TRUE(brute_force_enumerate(g).empty());
}

TEST(Oracle, SingleNode)
{
    rooted_digraph g = make(1, 1, {});
    EXPECT_EQ(count_arborescences(g), 1);
    EXPECT_EQ(brute_force_enumerate(g).size(), 1u);
}

TEST(Oracle, BruteForceMatchesDeterminant)
{
    for (std::uint64_t seed = 1; seed <= 400; ++seed) {
        node_id n = 2 + static_cast<node_id>(seed % 7);
        rooted_digraph g = gen::random_graph(n, n - 2 + static_cast<std::int64_t>(seed % 14), seed).build();
        canonical_arb_set arbs = brute_force_enumerate(g);
        ASSERT_EQ(big_count(arbs.size()), count_arborescences(g)) << seed;
        for (const auto& a : arbs) ASSERT_TRUE(is_arborescence(g, a));
        ASSERT_TRUE(std::adjacent_find(arbs.begin(), arbs.end()) == arbs.end());
    }
}

TEST(Oracle, OtherRootsByDeterminant)
{
    rooted_digraph g = make(3, 1, {{1, 2}, {2, 3}, {3, 1}});
    EXPECT_EQ(count_arborescences(g, 1), 1);
    EXPECT_EQ(count_arborescences(g, 2), 1);
    rooted_digraph h = make(3, 1, {{1, 2}, {1, 3}});
    EXPECT_EQ(count_arborescences(h, 2), 0);
}

TEST(Oracle, IsArborescenceRejects)
{
    rooted_digraph g = make(3, 1, {{1, 2}, {2, 3}, {3, 2}, {1, 3}});
    EXPECT_TRUE(is_arborescence(g, {1, 2}));
    EXPECT_TRUE(is_arborescence(g, {4, 3}));
    EXPECT_FALSE(is_arborescence(g, {1}));
    EXPECT_FALSE(is_arborescence(g, {2, 4}));  // two parents for 3
    EXPECT_FALSE(is_arborescence(g, {1, 1}));
    EXPECT_FALSE(is_arborescence(g, {1, 9}));
}

TEST(Replay, AcceptsValidStream)
{
    rooted_digraph g = gen::parallel(2).build();
    std::vector<delta_event> ev{{delta_kind::add, 1}, {delta_kind::report}, {delta_kind::remove, 1},
                                {delta_kind::add, 2}, {delta_kind::report}};
    EXPECT_EQ(replay_and_validate(g, ev).size(), 2u);
}

TEST(Replay, RejectsFaults)
{
    rooted_digraph g = gen::parallel(2).build();
    std::vector<delta_event> dup{{delta_kind::add, 1}, {delta_kind::report}, {delta_kind::report}};
    EXPECT_THROW(replay_and_validate(g, dup), oracle_error);
    std::vector<delta_event> twice{{delta_kind::add, 1}, {delta_kind::add, 1}};
    EXPECT_THROW(replay_and_validate(g, twice), oracle_error);
    std::vector<delta_event> absent{{delta_kind::remove, 2}};
    EXPECT_THROW(replay_and_validate(g, absent), oracle_error);
    std::vector<delta_event> notree{{delta_kind::add, 1}, {delta_kind::add, 2}, {delta_kind::report}};
    EXPECT_THROW(replay_and_validate(g, notree), oracle_error);
    std::vector<delta_event> empty{{delta_kind::report}};
    EXPECT_THROW(replay_and_validate(g, empty), oracle_error);
}

TEST(Oracle, BruteForceCap)
{
    EXPECT_THROW(brute_force_enumerate(gen::bicycle(13).build()), oracle_error);
}
