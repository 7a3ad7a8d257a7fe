#include <gtest/gtest.h>

#include "arbo/disjoint_pair.hpp"
#include "support.hpp"

using namespace arbo;
using arbo::testing::from_mask;
using arbo::testing::make;

namespace {

// Independent check of the pair on its own terms: ancestor relations by
// walking parent pointers rather than by interval numbering.
void check_pair(const rooted_digraph& g, const arborescence_pair& p)
{
    const node_id n = g.node_count();
    auto anc = [&](const std::vector<edge_id>& by_head, node_id a, node_id v) {
        for (int steps = 0; steps <= n; ++steps) {
            if (v == a) return true;
            if (v == g.root()) return false;
            v = g.tail(by_head[v]);
        }
        ADD_FAILURE() << "cycle in parent pointers";
        return false;
    };
    for (node_id v = 1; v <= n; ++v) {
        if (v == g.root()) continue;
        ASSERT_NE(p.a_by_head[v], p.b_by_head[v]);
        ASSERT_EQ(g.head(p.a_by_head[v]), v);
        ASSERT_EQ(g.head(p.b_by_head[v]), v);
        ASSERT_TRUE(anc(p.a_by_head, g.root(), v));
        ASSERT_TRUE(anc(p.b_by_head, g.root(), v));
    }
    g.for_each_edge([&](edge_id e) {
        ASSERT_FALSE(anc(p.a_by_head, g.head(e), g.tail(e)) && anc(p.b_by_head, g.head(e), g.tail(e)))
            << "edge " << e << " in " << to_text(g);
    });
    ASSERT_EQ(p.a_edges.size(), static_cast<std::size_t>(n - 1));
    for (std::size_t i = 0; i < p.a_edges.size(); ++i) {
        ASSERT_EQ(p.a.pre[g.head(p.a_edges[i])], static_cast<int>(i) + 2);
        ASSERT_EQ(g.head(p.b_edges[i]), g.head(p.a_edges[i]));
    }
    ASSERT_EQ(p.c_edges.size() + 2 * p.a_edges.size(), static_cast<std::size_t>(g.edge_count()));
}

// Trims and flattens g in place and checks the pair; returns false when the
// trimmed graph has a single node.
bool check_trimmed(rooted_digraph& g, payload_arena& arena)
{
    trim_result t = trim(g);
    flatten_result f = flatten(g, arena);
    bool nontrivial = g.node_count() >= 2;
    if (nontrivial) {
        arborescence_pair p = find_disjoint_pair(g);
        EXPECT_TRUE(verify_pair_property(g, p));
        check_pair(g, p);
    }
    g.rollback(f.mark);
    g.rollback(t.mark);
    return nontrivial;
}

} // namespace

TEST(DisjointPair, BidirectedFourCycleExample)
{
    // after trimming: 1:(1,2) 2:(2,3) 3:(3,2) 4:(3,4) 5:(4,3) 6:(1,4)
    rooted_digraph g = make(4, 1, {{1, 2}, {2, 3}, {3, 2}, {3, 4}, {4, 3}, {1, 4}});
    arborescence_pair p = pair_from_parents(g, {0, 0, 1, 2, 4}, {0, 0, 3, 5, 6});
    EXPECT_TRUE(verify_pair_property(g, p));
    EXPECT_TRUE(p.c_edges.empty());
    arborescence_pair q = find_disjoint_pair(g);
    check_pair(g, q);
}

TEST(DisjointPair, TrimmedK3Example)
{
    // K3 without edges into the root: 1:(1,2) 2:(1,3) 3:(2,3) 4:(3,2)
    rooted_digraph g = make(3, 1, {{1, 2}, {1, 3}, {2, 3}, {3, 2}});
    arborescence_pair p = pair_from_parents(g, {0, 0, 1, 3}, {0, 0, 4, 2});
    EXPECT_TRUE(verify_pair_property(g, p));
    check_pair(g, find_disjoint_pair(g));
}

TEST(DisjointPair, ParallelPair)
{
    rooted_digraph g = gen::parallel(2).build();
    arborescence_pair p = find_disjoint_pair(g);
    EXPECT_NE(p.a_by_head[2], p.b_by_head[2]);
    EXPECT_TRUE(p.c_edges.empty());
    payload_arena arena(3);
    rooted_digraph h = gen::parallel(3).build();
    flatten_result f = flatten(h, arena);
    arborescence_pair q = find_disjoint_pair(h);
    std::vector<payload_id> ps{h.payload(q.a_by_head[2]), h.payload(q.b_by_head[2])};
    std::sort(ps.begin(), ps.end());
    EXPECT_EQ(ps, (std::vector<payload_id>{1, 4}));
    h.rollback(f.mark);
}

TEST(DisjointPair, VerifyRejectsSharedEdge)
{
    rooted_digraph g = make(4, 1, {{1, 2}, {2, 3}, {3, 2}, {3, 4}, {4, 3}, {1, 4}});
    arborescence_pair p = pair_from_parents(g, {0, 0, 1, 2, 4}, {0, 0, 1, 5, 6});
    EXPECT_FALSE(verify_pair_property(g, p));
}

TEST(DisjointPair, VerifyRejectsAncestorInBoth)
{
    // 1,2:(1,2) 3,4:(2,3) 5:(3,2) 6:(1,3); with both trees using 1->2->3
    // the edge (3,2) has 2 above 3 twice
    rooted_digraph g = make(3, 1, {{1, 2}, {1, 2}, {2, 3}, {2, 3}, {3, 2}, {1, 3}});
    arborescence_pair p = pair_from_parents(g, {0, 0, 1, 3}, {0, 0, 2, 4});
    EXPECT_FALSE(verify_pair_property(g, p));
    arborescence_pair q = pair_from_parents(g, {0, 0, 1, 3}, {0, 0, 5, 6});
    EXPECT_TRUE(verify_pair_property(g, q));
}

TEST(DisjointPair, VerifyRejectsNonArborescence)
{
    rooted_digraph g = make(3, 1, {{1, 2}, {2, 3}, {3, 2}, {1, 3}});
    arborescence_pair p = pair_from_parents(g, {0, 0, 1, 2}, {0, 0, 3, 4});
    p.b_by_head[3] = 2;
    p.b_by_head[2] = 3;
    EXPECT_FALSE(verify_pair_property(g, p));
}

TEST(DisjointPair, ExhaustiveTrimmedSmallGraphs)
{
    int checked = 0;
    for (node_id n = 2; n <= 5; ++n) {
        int pairs = n * (n - 1);
        for (std::uint64_t mask = 0; mask < (1ull << pairs); ++mask) {
            edge_list el = from_mask(n, mask);
            for (node_id r = 1; r <= (n <= 4 ? n : 1); ++r) {
                el.root = r;
                rooted_digraph g = el.build();
                if (!arbo::testing::all_reachable(g)) continue;
                payload_arena arena(static_cast<payload_id>(el.edges.size()));
                if (check_trimmed(g, arena)) ++checked;
                if (::testing::Test::HasFatalFailure()) return;
            }
        }
    }
    EXPECT_GT(checked, 10000);
}

TEST(DisjointPair, SampledSixAndSeven)
{
    gen::rng r(7);
    for (int t = 0; t < 20000; ++t) {
        node_id n = 6 + static_cast<node_id>(t % 2);
        edge_list el = from_mask(n, r.below(1ull << (n * (n - 1))));
        rooted_digraph g = el.build();
        if (!arbo::testing::all_reachable(g)) continue;
        payload_arena arena(static_cast<payload_id>(el.edges.size()));
        check_trimmed(g, arena);
        if (::testing::Test::HasFatalFailure()) return;
    }
}

TEST(DisjointPair, RandomMultigraphsUpTo64)
{
    for (std::uint64_t seed = 1; seed <= 3000; ++seed) {
        gen::rng r(seed);
        node_id n = 2 + static_cast<node_id>(r.below(63));
        std::int64_t m = n - 1 + static_cast<std::int64_t>(r.below(3 * n + 1));
        edge_list el = gen::random_graph(n, m, seed);
        rooted_digraph g = el.build();
        payload_arena arena(static_cast<payload_id>(el.edges.size()));
        check_trimmed(g, arena);
        if (::testing::Test::HasFatalFailure()) return;
    }
}

TEST(DisjointPair, StructuredFamilies)
{
    std::vector<edge_list> fams;
    for (node_id n = 3; n <= 40; ++n) {
        fams.push_back(gen::bicycle(n));
        fams.push_back(gen::complete(std::min<node_id>(n, 12)));
        if (n >= 5) fams.push_back(gen::bipath_cycles(n, 2));
        if (n >= 12) fams.push_back(gen::fatnode(n, 4));
    }
    for (auto& el : fams) {
        rooted_digraph g = el.build();
        payload_arena arena(static_cast<payload_id>(el.edges.size()));
        check_trimmed(g, arena);
        if (::testing::Test::HasFatalFailure()) return;
    }
}
