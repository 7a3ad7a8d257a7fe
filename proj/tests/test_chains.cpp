#include <gtest/gtest.h>

#include "arbo/chain_decomposition.hpp"
#include "support.hpp"

using namespace arbo;
using arbo::testing::make;
using arbo::testing::trimmed_flat;

namespace {

// Bidirected cycle without the edges into the root, with the path pair:
// slots 1..n-1 are (i, i+1), slots n..2n-2 are (1, n), (n, n-1), ..., (3, 2).
rooted_digraph path_pair_cycle(node_id n, arborescence_pair& p, std::vector<std::pair<node_id, node_id>> extra = {})
{
    std::vector<std::pair<node_id, node_id>> es;
    for (node_id v = 1; v < n; ++v) es.emplace_back(v, v + 1);
    es.emplace_back(1, n);
    for (node_id v = n; v > 2; --v) es.emplace_back(v, v - 1);
    for (auto e : extra) es.push_back(e);
    rooted_digraph g = make(n, 1, es);
    std::vector<edge_id> a(n + 1, no_edge), b(n + 1, no_edge);
    for (node_id v = 2; v <= n; ++v) a[v] = v - 1;
    b[n] = n;
    for (node_id v = n - 1; v >= 2; --v) b[v] = n + (n - v);
    p = pair_from_parents(g, a, b);
    return g;
}

// Structural checks on a Thin decomposition, independent of the builder.
void check_decomposition(const rooted_digraph& g, const arborescence_pair& p, const chain_decomposition& d)
{
    ASSERT_TRUE(chains_well_formed(g, p, d));
    const node_id n = g.node_count();
    // subchains tile every chain, consecutive ones sharing an endpoint
    std::vector<int> next(d.chains.size(), 0);
    for (const subchain& s : d.subchains) {
        ASSERT_EQ(s.b, next[s.chain]);
        ASSERT_TRUE(d.interesting_node[d.chains[s.chain][s.b]]);
        ASSERT_TRUE(d.interesting_node[d.chains[s.chain][s.e]]);
        for (int k = s.b + 1; k < s.e; ++k) ASSERT_FALSE(d.interesting_node[d.chains[s.chain][k]]);
        next[s.chain] = s.e + (s.b == s.e ? 1 : 0);
    }
    for (std::size_t c = 0; c < d.chains.size(); ++c) {
        int len = static_cast<int>(d.chains[c].size());
        ASSERT_EQ(next[c], len == 1 ? 1 : len - 1);
    }
    // interesting: endpoint, C tail, or any out-edge leaving the chain pattern
    std::int64_t count = 0;
    for (int i = 1; i < n; ++i) {
        node_id v = p.a.order[i];
        const auto& ch = d.chains[d.chain_of[v]];
        int k = d.position[v];
        bool end = k == 0 || k + 1 == static_cast<int>(ch.size());
        bool other = false;
        g.for_each_out(v, [&](edge_id e) {
            bool fwd = k + 1 < static_cast<int>(ch.size()) && e == p.a_by_head[ch[k + 1]];
            bool bwd = k > 0 && e == p.b_by_head[ch[k - 1]];
            if (!fwd && !bwd) other = true;
        });
        ASSERT_EQ(d.interesting[i] != 0, end || other) << "index " << i;
        count += d.interesting[i];
    }
    EXPECT_LE(count, d.c_size + 4 * static_cast<std::int64_t>(d.chains.size()));
}

} // namespace

TEST(Chains, BidirectedFourCycle)
{
    arborescence_pair p;
    rooted_digraph g = path_pair_cycle(4, p);
    thin_verdict v = decompose(g, p);
    ASSERT_FALSE(v.thick);
    const auto& ch = v.decomposition.chains;
    ASSERT_EQ(ch.size(), 2u);
    EXPECT_EQ(ch[0], (std::vector<node_id>{1}));
    EXPECT_EQ(ch[1], (std::vector<node_id>{2, 3, 4}));
    check_decomposition(g, p, v.decomposition);
    // 3 is the only inner node and has no other out-edges
    EXPECT_EQ(v.decomposition.interesting, (std::vector<std::uint8_t>{0, 1, 0, 1}));
}

TEST(Chains, SixCycleHasOneLongSubchain)
{
    arborescence_pair p;
    rooted_digraph g = path_pair_cycle(6, p);
    thin_verdict v = decompose(g, p);
    ASSERT_FALSE(v.thick);
    check_decomposition(g, p, v.decomposition);
    ASSERT_EQ(v.decomposition.subchains.size(), 2u);
    const subchain& s = v.decomposition.subchains[1];
    EXPECT_EQ(s.b, 0);
    EXPECT_EQ(s.e, 4);
}

TEST(Chains, CHeadsBecomeSingletons)
{
    arborescence_pair p;
    rooted_digraph g = path_pair_cycle(8, p, {{1, 5}});
    thin_verdict v = decompose(g, p);
    ASSERT_FALSE(v.thick);
    check_decomposition(g, p, v.decomposition);
    EXPECT_EQ(v.decomposition.chains.size(), 4u);  // {1}, {2,3,4}, {5}, {6,7,8}
    EXPECT_EQ(v.decomposition.chains[2], (std::vector<node_id>{5}));
}

TEST(Chains, BipathFamilyChainCountIndependentOfN)
{
    std::vector<std::size_t> counts;
    for (node_id n : {17, 33, 65, 129, 257}) {
        edge_list el = gen::bipath_cycles(n, 3);
        payload_arena arena(static_cast<payload_id>(el.edges.size()));
        rooted_digraph g = trimmed_flat(el, arena);
        arborescence_pair p = find_disjoint_pair(g);
        thin_verdict v = decompose(g, p);
        ASSERT_FALSE(v.thick) << v.reason;
        check_decomposition(g, p, v.decomposition);
        counts.push_back(v.decomposition.chains.size());
    }
    EXPECT_EQ(*std::max_element(counts.begin(), counts.end()), *std::min_element(counts.begin(), counts.end()));
}

TEST(Chains, CompleteEightIsThinAtDefaults)
{
    edge_list el = gen::complete(8);
    payload_arena arena(static_cast<payload_id>(el.edges.size()));
    rooted_digraph g = trimmed_flat(el, arena);
    arborescence_pair p = find_disjoint_pair(g);
    thin_verdict v = classify_thin(g, p);
    // 8^6 = 262144 is below m^4 = 49^4, so a Thick label would be unsound
    EXPECT_LT(count_arborescences(g), big_count(49) * 49 * 49 * 49);
    ASSERT_FALSE(v.thick);
    check_decomposition(g, p, v.decomposition);
}

TEST(Chains, ThickVerdictsAreSound)
{
    // every Thick verdict for n <= 12 must carry at least m^4 arborescences
    int thick = 0, total = 0;
    for (std::uint64_t seed = 1; seed <= 1500; ++seed) {
        gen::rng r(seed);
        node_id n = 3 + static_cast<node_id>(r.below(10));
        edge_list el = gen::random_graph(n, n + static_cast<std::int64_t>(r.below(4 * n)), seed);
        payload_arena arena(static_cast<payload_id>(el.edges.size()));
        rooted_digraph g = trimmed_flat(el, arena);
        if (g.node_count() < 2) continue;
        arborescence_pair p = find_disjoint_pair(g);
        thin_verdict v = classify_thin(g, p);
        ++total;
        if (v.thick) {
            ++thick;
            big_count m = g.edge_count();
            EXPECT_GE(count_arborescences(g), m * m * m * m) << seed;
        } else {
            check_decomposition(g, p, v.decomposition);
        }
        if (::testing::Test::HasFatalFailure()) return;
    }
    EXPECT_GT(total, 1000);
    RecordProperty("thick", thick);
}

TEST(Chains, WellFormedOnRandomAndStructured)
{
    std::vector<edge_list> fams;
    for (node_id n = 3; n <= 60; ++n) {
        fams.push_back(gen::bicycle(n));
        if (n >= 5) fams.push_back(gen::bipath_cycles(n, 2));
        if (n >= 12) fams.push_back(gen::fatnode(n, 4));
        fams.push_back(gen::random_graph(n, 2 * n, static_cast<std::uint64_t>(n)));
        fams.push_back(gen::random_graph(n, n + 3, static_cast<std::uint64_t>(n) + 1000));
    }
    for (auto& el : fams) {
        payload_arena arena(static_cast<payload_id>(el.edges.size()));
        rooted_digraph g = trimmed_flat(el, arena);
        if (g.node_count() < 2) continue;
        arborescence_pair p = find_disjoint_pair(g);
        thin_verdict v = classify_thin(g, p);
        if (!v.thick) check_decomposition(g, p, v.decomposition);
        if (::testing::Test::HasFatalFailure()) return;
    }
}

TEST(Chains, CountLimitsTriggerThick)
{
    arborescence_pair p;
    rooted_digraph g = path_pair_cycle(8, p, {{1, 4}, {1, 6}});
    decomposition_thresholds th;
    th.c_heads = 0.5;  // 2 heads >= 0.5 * 3
    thin_verdict v = decompose(g, p, th);
    EXPECT_TRUE(v.thick);
    EXPECT_EQ(v.reason, "C head limit");
    decomposition_thresholds tc;
    tc.chains = 0.1;
    EXPECT_TRUE(decompose(g, p, tc).thick);
    EXPECT_FALSE(decompose(g, p).thick);
}

TEST(FatNode, SmallCIsSkipped)
{
    arborescence_pair p;
    rooted_digraph g = path_pair_cycle(16, p, {{1, 8}, {2, 8}});
    thin_verdict v = decompose(g, p);
    ASSERT_FALSE(v.thick);
    EXPECT_FALSE(find_fat_node(g, p, v).has_value());
}

TEST(FatNode, SharedHeadForward)
{
    std::vector<std::pair<node_id, node_id>> extra;
    for (node_id u = 1; u <= 30; ++u) extra.emplace_back(u, 40);
    arborescence_pair p;
    rooted_digraph g = path_pair_cycle(64, p, extra);
    decomposition_thresholds th;
    thin_verdict v = decompose(g, p, th);
    ASSERT_FALSE(v.thick) << v.reason;
    std::optional<fat_node> f = find_fat_node(g, p, v, th);
    ASSERT_FALSE(v.thick);
    ASSERT_TRUE(f.has_value());
    EXPECT_EQ(f->head, 40);
    EXPECT_EQ(f->edges.size(), 30u);
    EXPECT_FALSE(f->via_b);
    EXPECT_FALSE(f->reversed);
}

TEST(FatNode, ManyLargeGroupsEscalate)
{
    std::vector<std::pair<node_id, node_id>> extra;
    for (node_id v = 10; v < 30; ++v) extra.emplace_back(1, v);
    arborescence_pair p;
    rooted_digraph g = path_pair_cycle(64, p, extra);
    decomposition_thresholds th;
    th.c_heads = 1000;
    thin_verdict v = decompose(g, p, th);
    ASSERT_FALSE(v.thick) << v.reason;
    EXPECT_FALSE(find_fat_node(g, p, v, th).has_value());
    EXPECT_TRUE(v.thick);
    EXPECT_EQ(v.reason, "large group limit");
}
