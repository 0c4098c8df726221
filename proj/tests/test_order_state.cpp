#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include <probesort/core.hpp>
#include <probesort/generators.hpp>
#include <probesort/order_state.hpp>
#include <probesort/rng.hpp>

using namespace probesort;

namespace {

// Complete instance on 4 vertices, hidden order 0<1<2<3, with edges {0,2} and
// {1,3} predicted backward.
instance complete4_two_flips() {
    std::vector<edge_key> edges{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    orientation truth(6, edge_dir::lo_to_hi);
    orientation pred = truth;
    pred[1] = edge_dir::hi_to_lo;  // {0,2} predicted 2 -> 0
    pred[4] = edge_dir::hi_to_lo;  // {1,3} predicted 3 -> 1
    return make_instance(4, edges, truth, pred);
}

TEST(OrderState, TrustedSetsComeFromThePrediction) {
    const instance inst = complete4_two_flips();
    order_state st(inst.n, inst.edges, inst.prediction);
    EXPECT_EQ(st.trusted_in(0), (std::vector<int>{2}));
    EXPECT_EQ(st.trusted_in(1), (std::vector<int>{0, 3}));
    EXPECT_EQ(st.trusted_in(2), (std::vector<int>{1}));
    EXPECT_EQ(st.trusted_in(3), (std::vector<int>{0, 2}));
}

TEST(OrderState, WrongProbeDropsExactlyOneTrustEntry) {
    const instance inst = complete4_two_flips();
    order_state st(inst.n, inst.edges, inst.prediction);
    const int id02 = *inst.edge_id(0, 2);
    const auto e = st.apply_probe(id02, inst.truth[static_cast<std::size_t>(id02)]);
    EXPECT_TRUE(e.newly_resolved);
    EXPECT_TRUE(e.exposed_wrong);
    EXPECT_TRUE(st.trusted_in(0).empty());       // 2 was 0's only trusted in-neighbor
    EXPECT_EQ(st.trusted_in(2), (std::vector<int>{1}));  // unrelated sets untouched
    // Probing the same edge again changes nothing.
    const auto again = st.apply_probe(id02, inst.truth[static_cast<std::size_t>(id02)]);
    EXPECT_FALSE(again.newly_resolved);
    EXPECT_FALSE(again.exposed_wrong);
}

TEST(OrderState, CorrectProbeKeepsTrust) {
    const instance inst = complete4_two_flips();
    order_state st(inst.n, inst.edges, inst.prediction);
    const int id01 = *inst.edge_id(0, 1);
    const auto e = st.apply_probe(id01, inst.truth[static_cast<std::size_t>(id01)]);
    EXPECT_TRUE(e.newly_resolved);
    EXPECT_FALSE(e.exposed_wrong);
    EXPECT_EQ(st.trusted_in(1), (std::vector<int>{0, 3}));
    EXPECT_EQ(st.resolved_dir(id01), edge_dir::lo_to_hi);
    EXPECT_FALSE(st.deduced(id01));
}

TEST(OrderState, ContradictingResolutionsAreFatal) {
    const instance inst = complete4_two_flips();
    order_state st(inst.n, inst.edges, inst.prediction);
    st.apply_probe(0, edge_dir::lo_to_hi);
    EXPECT_THROW(st.apply_probe(0, edge_dir::hi_to_lo), internal_error);
    EXPECT_THROW(st.resolve_deduced(0), internal_error);
    EXPECT_THROW(st.resolved_dir(1), internal_error);
}

TEST(OrderState, DeducedEdgesResolveToThePrediction) {
    const instance inst = complete4_two_flips();
    order_state st(inst.n, inst.edges, inst.prediction);
    const int id03 = *inst.edge_id(0, 3);
    st.resolve_deduced(id03);
    EXPECT_TRUE(st.resolved(id03));
    EXPECT_TRUE(st.deduced(id03));
    EXPECT_EQ(st.resolved_dir(id03), inst.prediction[static_cast<std::size_t>(id03)]);
}

TEST(OrderState, SettlingDemandsResolvedIncidentEdges) {
    const instance inst = complete4_two_flips();
    order_state st(inst.n, inst.edges, inst.prediction);
    // 0's predicted in-edge {0,2} is unresolved.
    EXPECT_THROW(st.add_settled(0), internal_error);
    st.apply_probe(*inst.edge_id(0, 2), edge_dir::lo_to_hi);
    st.add_settled(0);
    EXPECT_TRUE(st.settled(0));
    EXPECT_EQ(st.settled_count(), 1);
    EXPECT_THROW(st.add_settled(0), internal_error);  // twice
    // 1's predicted in-edges {0,1} and {1,3} are unresolved.
    EXPECT_THROW(st.add_settled(1), internal_error);
}

TEST(OrderState, HandDrivenSettleSequence) {
    const instance inst = complete4_two_flips();
    order_state st(inst.n, inst.edges, inst.prediction);
    auto probe = [&](int u, int v) {
        const int id = *inst.edge_id(u, v);
        st.apply_probe(id, inst.truth[static_cast<std::size_t>(id)]);
    };
    probe(0, 2);  // mispredicted: empties T_0
    st.add_settled(0);
    probe(0, 1);
    probe(1, 3);  // mispredicted: T_1 becomes {0}
    EXPECT_EQ(st.trusted_in(1), (std::vector<int>{0}));
    st.add_settled(1);
    EXPECT_TRUE(st.precedes(0, 1));
    EXPECT_FALSE(st.precedes(1, 0));
    probe(1, 2);
    st.add_settled(2);
    EXPECT_TRUE(st.precedes(0, 2));  // direct edge and the 0->1->2 path
    EXPECT_TRUE(st.precedes(1, 2));
    EXPECT_FALSE(st.precedes(2, 0));
    // 3: trusted in-neighborhood {0,2} is settled and totally ordered.
    EXPECT_EQ(st.trusted_outside(3), std::vector<int>{});
    EXPECT_TRUE(st.incomparable_trusted_pairs(3).empty());
    ASSERT_TRUE(st.max_trusted(3).has_value());
    EXPECT_EQ(*st.max_trusted(3), 2);
    probe(2, 3);                            // confirm the maximum
    st.resolve_deduced(*inst.edge_id(0, 3));  // the rest follows by transitivity
    st.add_settled(3);
    EXPECT_TRUE(st.precedes(0, 3));
    EXPECT_TRUE(st.precedes(1, 3));
    EXPECT_EQ(st.settled_order(), (std::vector<int>{0, 1, 2, 3}));
    const orientation full = st.full_orientation();
    EXPECT_EQ(full, inst.truth);
}

TEST(OrderState, FullOrientationRequiresEverythingResolved) {
    const instance inst = complete4_two_flips();
    order_state st(inst.n, inst.edges, inst.prediction);
    EXPECT_THROW(st.full_orientation(), internal_error);
}

// Mid-run shape where two settled vertices stay incomparable: a diamond
// 0 -> {1,2} -> 3 with no edge between 1 and 2.
TEST(OrderState, IncomparableSettledPairIsReported) {
    std::vector<edge_key> edges{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    orientation pred(4, edge_dir::lo_to_hi);
    order_state st(4, edges, pred);
    st.apply_probe(0, edge_dir::lo_to_hi);
    st.apply_probe(1, edge_dir::lo_to_hi);
    st.add_settled(0);
    st.add_settled(1);
    st.add_settled(2);
    EXPECT_TRUE(st.precedes(0, 1));
    EXPECT_TRUE(st.precedes(0, 2));
    EXPECT_FALSE(st.precedes(1, 2));
    EXPECT_FALSE(st.precedes(2, 1));
    EXPECT_EQ(st.incomparable_trusted_pairs(3),
              (std::vector<std::pair<int, int>>{{1, 2}}));
    EXPECT_FALSE(st.max_trusted(3).has_value());
    // Unsettled vertices never compare.
    EXPECT_FALSE(st.precedes(0, 3));
    EXPECT_FALSE(st.precedes(3, 0));
}

TEST(OrderState, QueriesOnUnsettledTrustedMembersAreFatal) {
    std::vector<edge_key> edges{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    orientation pred(4, edge_dir::lo_to_hi);
    order_state st(4, edges, pred);
    EXPECT_THROW(st.incomparable_trusted_pairs(3), internal_error);
}

// Reachability oracle: recompute "a precedes b within the settled set" by
// depth-first search over resolved edges through settled vertices only.
bool dfs_precedes(const instance& inst, const order_state& st, int a, int b) {
    if (!st.settled(a) || !st.settled(b) || a == b) return false;
    std::vector<int> stack{a};
    std::set<int> seen{a};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (std::size_t i = 0; i < inst.edges.size(); ++i) {
            if (!st.resolved(static_cast<int>(i))) continue;
            const edge_key& e = inst.edges[i];
            if (dir_tail(e, st.resolved_dir(static_cast<int>(i))) != v) continue;
            const int h = dir_head(e, st.resolved_dir(static_cast<int>(i)));
            if (!st.settled(h) || seen.count(h)) continue;
            if (h == b) return true;
            seen.insert(h);
            stack.push_back(h);
        }
    }
    return false;
}

TEST(OrderState, ClosureMatchesIndependentSearchWhileSettling) {
    rng64 seeds(424242);
    for (int round = 0; round < 25; ++round) {
        gen_spec gs;
        gs.n = 5 + static_cast<int>(uniform_below(seeds, 20));
        gs.extra_edges = static_cast<long long>(uniform_below(seeds, 3 * static_cast<std::uint64_t>(gs.n)));
        const long long cap = static_cast<long long>(gs.n) * (gs.n - 1) / 2 - (gs.n - 1);
        if (gs.extra_edges > cap) gs.extra_edges = cap;
        gs.w = static_cast<int>(uniform_below(seeds, static_cast<std::uint64_t>(gs.n)));
        if (gs.w > gs.n - 1 + gs.extra_edges) gs.w = 0;
        gs.seed = seeds();
        const instance inst = generate(gs);
        const std::vector<int> path = true_ham_path(inst);

        order_state st(inst.n, inst.edges, inst.prediction);
        std::vector<std::size_t> trusted_sizes;
        for (int u = 0; u < inst.n; ++u) trusted_sizes.push_back(st.trusted_in(u).size());

        for (int u : path) {
            // Probe every unresolved edge at u, then settle it.
            for (std::size_t i = 0; i < inst.edges.size(); ++i) {
                const edge_key& e = inst.edges[i];
                if (e.lo != u && e.hi != u) continue;
                if (!st.resolved(static_cast<int>(i)))
                    st.apply_probe(static_cast<int>(i), inst.truth[i]);
            }
            st.add_settled(u);
            // Trusted sets only ever shrink.
            for (int v = 0; v < inst.n; ++v) {
                EXPECT_LE(st.trusted_in(v).size(), trusted_sizes[static_cast<std::size_t>(v)]);
                trusted_sizes[static_cast<std::size_t>(v)] = st.trusted_in(v).size();
            }
            for (int a = 0; a < inst.n; ++a)
                for (int b = 0; b < inst.n; ++b)
                    ASSERT_EQ(st.precedes(a, b), dfs_precedes(inst, st, a, b))
                        << "round " << round << " pair " << a << "," << b;
        }

        // With everything probed, each trusted set is exactly the set of
        // correctly predicted true in-neighbors.
        for (int u = 0; u < inst.n; ++u) {
            std::vector<int> correct_in;
            for (std::size_t i = 0; i < inst.edges.size(); ++i) {
                if (inst.truth[i] != inst.prediction[i]) continue;
                if (dir_head(inst.edges[i], inst.truth[i]) == u)
                    correct_in.push_back(dir_tail(inst.edges[i], inst.truth[i]));
            }
            std::sort(correct_in.begin(), correct_in.end());
            EXPECT_EQ(st.trusted_in(u), correct_in);
        }
        // The settled order is total once A = V: consecutive path vertices
        // compare, and precedes agrees with the hidden order everywhere.
        std::vector<int> pos(static_cast<std::size_t>(inst.n));
        for (int i = 0; i < inst.n; ++i) pos[static_cast<std::size_t>(path[static_cast<std::size_t>(i)])] = i;
        for (int a = 0; a < inst.n; ++a)
            for (int b = 0; b < inst.n; ++b)
                if (a != b && st.precedes(a, b))
                    EXPECT_LT(pos[static_cast<std::size_t>(a)], pos[static_cast<std::size_t>(b)]);
    }
}

}  // namespace
