#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "probesort/generators.hpp"
#include "probesort/verify.hpp"

namespace probesort {
namespace {

instance chain3_with_shortcut() {
    // hidden order 0 < 1 < 2, edges 01, 12, 02, all predicted correctly
    return make_instance(3,
                         {make_edge(0, 1), make_edge(1, 2), make_edge(0, 2)},
                         {edge_dir::lo_to_hi, edge_dir::lo_to_hi, edge_dir::lo_to_hi},
                         {edge_dir::lo_to_hi, edge_dir::lo_to_hi, edge_dir::lo_to_hi});
}

TEST(BruteForce, ProbesEveryEdgeOnTheChain) {
    auto inst = chain3_with_shortcut();
    probe_oracle oracle(inst);
    run_stats stats;
    auto path = brute_force_solve(oracle, &stats);
    EXPECT_EQ(path, (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(oracle.probes_used(), 3);
    EXPECT_EQ(stats.requests, 3);
    EXPECT_EQ(stats.fresh_probes, 3);
}

TEST(BruteForce, CompleteGraphCostsAllSixEdges) {
    gen_spec gs;
    gs.n = 4;
    gs.family = gen_family::complete;
    gs.seed = 11;
    auto inst = generate(gs);
    probe_oracle oracle(inst);
    auto path = brute_force_solve(oracle);
    EXPECT_EQ(oracle.probes_used(), 6);
    EXPECT_EQ(path, true_ham_path(inst));
}

TEST(BruteForce, SingleVertexNeedsNothing) {
    instance inst;
    inst.n = 1;
    probe_oracle oracle(inst);
    auto path = brute_force_solve(oracle);
    EXPECT_EQ(path, std::vector<int>{0});
    EXPECT_EQ(oracle.probes_used(), 0);
}

TEST(BruteForce, MatchesTrueOrderOnRandomInstances) {
    for (int round = 0; round < 500; ++round) {
        gen_spec gs;
        gs.n = 2 + round % 40;
        long long cap = static_cast<long long>(gs.n) * (gs.n - 1) / 2 - (gs.n - 1);
        gs.extra_edges = std::min<long long>((round * 7) % (3 * gs.n), cap);
        gs.w = round % (gs.n - 1 + gs.extra_edges + 1);
        gs.seed = 9000 + round;
        auto inst = generate(gs);
        probe_oracle oracle(inst);
        auto path = brute_force_solve(oracle);
        ASSERT_EQ(path, true_ham_path(inst)) << "round " << round;
        ASSERT_TRUE(check_path(inst, path)) << "round " << round;
        ASSERT_EQ(oracle.probes_used(),
                  static_cast<long long>(inst.edges.size()))
            << "round " << round;
    }
}

TEST(BruteForce, MisuseIsFatal) {
    auto inst = chain3_with_shortcut();
    brute_force_solver solver(inst.n, inst.edges);
    auto step = solver.step();
    ASSERT_TRUE(std::holds_alternative<need_probe>(step));
    EXPECT_THROW(solver.feed({make_edge(1, 2), edge_dir::lo_to_hi, true}),
                 internal_error);
}

TEST(CheckPath, AcceptsTheTrueOrderAndNothingElse) {
    gen_spec gs;
    gs.n = 12;
    gs.extra_edges = 20;
    gs.w = 5;
    gs.seed = 77;
    auto inst = generate(gs);
    auto path = true_ham_path(inst);
    EXPECT_TRUE(check_path(inst, path));

    auto reversed = path;
    std::reverse(reversed.begin(), reversed.end());
    EXPECT_FALSE(check_path(inst, reversed));

    auto swapped = path;
    std::swap(swapped[3], swapped[4]);
    EXPECT_FALSE(check_path(inst, swapped));

    auto truncated = path;
    truncated.pop_back();
    EXPECT_FALSE(check_path(inst, truncated));

    auto duplicated = path;
    duplicated[0] = duplicated[1];
    EXPECT_FALSE(check_path(inst, duplicated));
}

TEST(PrefixMaxima, CountsLeftToRightMaxima) {
    EXPECT_EQ(prefix_maxima_count({1, 2, 3}), 3);
    EXPECT_EQ(prefix_maxima_count({3, 1, 2}), 1);
    EXPECT_EQ(prefix_maxima_count({2, 1, 4, 3}), 2);
    EXPECT_EQ(prefix_maxima_count({1}), 1);
}

TEST(PrefixMaxima, RejectsNonPermutations) {
    EXPECT_THROW(prefix_maxima_count({0, 1, 2}), std::invalid_argument);
    EXPECT_THROW(prefix_maxima_count({1, 1, 3}), std::invalid_argument);
    EXPECT_THROW(prefix_maxima_count({1, 2, 4}), std::invalid_argument);
}

TEST(PrefixMaxima, MeanOverAllSizeFourPermutationsIsTwentyFiveTwelfths) {
    std::vector<int> perm{1, 2, 3, 4};
    int total = 0;
    int count = 0;
    do {
        total += prefix_maxima_count(perm);
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(count, 24);
    EXPECT_EQ(total, 50);  // mean 25/12
    EXPECT_NEAR(static_cast<double>(total) / count, harmonic(4), 1e-12);
}

TEST(Harmonic, MatchesDirectSums) {
    EXPECT_DOUBLE_EQ(harmonic(1), 1.0);
    EXPECT_DOUBLE_EQ(harmonic(2), 1.5);
    EXPECT_NEAR(harmonic(4), 25.0 / 12.0, 1e-12);
    EXPECT_NEAR(harmonic(1000), 7.48547, 1e-5);
    // ln n + gamma < H_n <= ln n + 1
    for (int n : {2, 10, 100, 1000}) {
        double h = harmonic(n);
        EXPECT_GT(h, std::log(static_cast<double>(n)) + 0.5772);
        EXPECT_LE(h, std::log(static_cast<double>(n)) + 1.0);
    }
}

TEST(LemmaRandCheck, TrivialSizeAlwaysCountsOne) {
    auto rep = lemma_rand_check(1, 50, 3);
    EXPECT_EQ(rep.n, 1);
    EXPECT_EQ(rep.trials, 50);
    EXPECT_DOUBLE_EQ(rep.mean, 1.0);
    EXPECT_EQ(rep.max_observed, 1);
    EXPECT_EQ(rep.exceed_count, 0);
    EXPECT_DOUBLE_EQ(rep.expected_mean, 1.0);
}

TEST(LemmaRandCheck, MeanTracksTheHarmonicNumber) {
    auto rep = lemma_rand_check(1000, 20000, 42);
    EXPECT_NEAR(rep.mean, rep.expected_mean, 0.1);
    EXPECT_NEAR(rep.expected_mean, 7.48547, 1e-5);
    EXPECT_GT(rep.max_observed, 0);
}

TEST(LemmaRandCheck, TailNeverCrossesTheThreshold) {
    auto rep = lemma_rand_check(100, 20000, 42);
    EXPECT_EQ(rep.exceed_count, 0);
    EXPECT_DOUBLE_EQ(rep.exceed_fraction, 0.0);
    EXPECT_LE(rep.max_observed, rep.threshold);
    EXPECT_NEAR(rep.threshold, 6.0 * std::log(100.0) + 6.0, 1e-12);
}

TEST(LemmaRandCheck, ReplaysBySeed) {
    auto a = lemma_rand_check(50, 500, 7);
    auto b = lemma_rand_check(50, 500, 7);
    auto c = lemma_rand_check(50, 500, 8);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.max_observed, b.max_observed);
    EXPECT_NE(a.mean, c.mean);
}

TEST(LemmaRandCheck, ReportRendersEveryField) {
    auto rep = lemma_rand_check(10, 100, 1);
    auto text = format_report(rep);
    EXPECT_NE(text.find("n 10"), std::string::npos);
    EXPECT_NE(text.find("trials 100"), std::string::npos);
    EXPECT_NE(text.find("mean "), std::string::npos);
    EXPECT_NE(text.find("threshold "), std::string::npos);
    EXPECT_NE(text.find("exceed_fraction "), std::string::npos);
}

TEST(RankInsertion, HandSizedCases) {
    EXPECT_EQ(permutation_from_ranks({1}), std::vector<int>{1});
    EXPECT_EQ(permutation_from_ranks({1, 1}), (std::vector<int>{2, 1}));
    EXPECT_EQ(permutation_from_ranks({1, 2}), (std::vector<int>{1, 2}));
    EXPECT_EQ(permutation_from_ranks({1, 2, 1}), (std::vector<int>{2, 3, 1}));
    EXPECT_THROW(permutation_from_ranks({1, 3}), std::invalid_argument);
    EXPECT_THROW(permutation_from_ranks({0}), std::invalid_argument);
}

// Rank tuples (r_i in [1, i]) biject onto permutations, and r_i == i marks
// exactly the left-to-right maxima.
TEST(RankInsertion, RankTuplesBijectOntoPermutations) {
    std::map<std::vector<int>, std::vector<int>> seen;
    std::vector<int> ranks(5);
    for (ranks[0] = 1; ranks[0] <= 1; ++ranks[0])
        for (ranks[1] = 1; ranks[1] <= 2; ++ranks[1])
            for (ranks[2] = 1; ranks[2] <= 3; ++ranks[2])
                for (ranks[3] = 1; ranks[3] <= 4; ++ranks[3])
                    for (ranks[4] = 1; ranks[4] <= 5; ++ranks[4]) {
                        auto perm = permutation_from_ranks(ranks);
                        int fixed = 0;
                        for (int i = 0; i < 5; ++i)
                            if (ranks[i] == i + 1) ++fixed;
                        ASSERT_EQ(prefix_maxima_count(perm), fixed);
                        ASSERT_TRUE(seen.emplace(perm, ranks).second)
                            << "two rank tuples produced the same permutation";
                    }
    EXPECT_EQ(seen.size(), 120u);
}

TEST(RankInsertion, SamplerMatchesManualRankDraws) {
    rng64 gen_a(314), gen_b(314);
    for (int n : {1, 2, 7, 40}) {
        auto perm = permutation_via_rank_insertion(n, gen_a);
        std::vector<int> ranks(n);
        for (int i = 0; i < n; ++i)
            ranks[i] = static_cast<int>(
                           uniform_below(gen_b, static_cast<std::uint64_t>(i) + 1)) +
                       1;
        EXPECT_EQ(perm, permutation_from_ranks(ranks)) << "n=" << n;
    }
}

// Both samplers should be uniform over all 120 permutations of size 5; a
// chi-square statistic far above df=119 would expose a bias.
TEST(RankInsertion, AgreesWithShufflingUnderChiSquare) {
    constexpr int kSamples = 60000;
    constexpr int kCells = 120;
    std::map<std::vector<int>, int> index;
    {
        std::vector<int> perm{1, 2, 3, 4, 5};
        int next = 0;
        do {
            index[perm] = next++;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    auto chi_square = [&](const std::vector<int>& histogram) {
        double expected = static_cast<double>(kSamples) / kCells;
        double chi2 = 0.0;
        for (int c : histogram) {
            double d = c - expected;
            chi2 += d * d / expected;
        }
        return chi2;
    };

    std::vector<int> via_ranks(kCells, 0), via_shuffle(kCells, 0);
    rng64 gen_r(2024), gen_s(4048);
    std::vector<int> perm(5);
    for (int t = 0; t < kSamples; ++t) {
        via_ranks[index.at(permutation_via_rank_insertion(5, gen_r))]++;
        for (int i = 0; i < 5; ++i) perm[i] = i + 1;
        shuffle_vec(perm, gen_s);
        via_shuffle[index.at(perm)]++;
    }
    EXPECT_LT(chi_square(via_ranks), 200.0);    // df = 119
    EXPECT_LT(chi_square(via_shuffle), 200.0);  // df = 119
    for (int c : via_ranks) EXPECT_GT(c, 0);
    for (int c : via_shuffle) EXPECT_GT(c, 0);
}

}  // namespace
}  // namespace probesort
