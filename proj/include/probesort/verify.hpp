#pragma once

// Ground-truth checking and statistical validation helpers:
//  - brute_force_solver: baseline that probes every edge, then sorts.
//  - check_path: independent validity test for a claimed Hamiltonian path.
//  - prefix-maxima machinery: counts left-to-right maxima of random
//    permutations and compares the tail against the 6 ln n + 6 threshold
//    that the randomized solver's probe bound leans on.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "probesort/core.hpp"
#include "probesort/oracle.hpp"
#include "probesort/rng.hpp"
#include "probesort/stepwise.hpp"

namespace probesort {

// Baseline solver: requests every edge in id order, then topologically sorts
// the fully revealed orientation. Costs exactly m distinct probes solo.
class brute_force_solver final : public stepwise_solver {
  public:
    brute_force_solver(int n, const std::vector<edge_key>& edges)
        : n_(n), edges_(&edges), dirs_(edges.size(), edge_dir::lo_to_hi) {
        PROBESORT_CHECK(n_ >= 1, "solver needs at least one vertex");
    }

    solver_step step() override {
        if (!path_.empty()) return done{path_};
        if (next_ < static_cast<int>(edges_->size()))
            return need_probe{(*edges_)[next_]};
        auto path = forced_topo_path(n_, oriented_adjacency(n_, *edges_, dirs_));
        PROBESORT_CHECK(path.has_value(),
                        "fully probed orientation has no Hamiltonian path");
        path_ = *path;
        if (path_.empty()) path_ = {0};  // n == 1, no edges
        return done{path_};
    }

    void feed(const probe_result& result) override {
        PROBESORT_CHECK(next_ < static_cast<int>(edges_->size()),
                        "answer fed after all edges were already requested");
        PROBESORT_CHECK((*edges_)[next_] == result.edge,
                        "answer fed for an edge this solver did not request");
        dirs_[next_] = result.dir;
        ++next_;
        ++stats_.requests;
    }

    const run_stats& stats() const { return stats_; }

  private:
    int n_ = 0;
    const std::vector<edge_key>* edges_;
    orientation dirs_;
    int next_ = 0;
    std::vector<int> path_;
    run_stats stats_;
};

// Probes all m edges and returns the unique source-to-sink path.
inline std::vector<int> brute_force_solve(probe_oracle& oracle,
                                          run_stats* stats = nullptr) {
    brute_force_solver solver(oracle.n(), oracle.edges());
    auto path = drive(solver, oracle);
    if (stats) {
        *stats = solver.stats();
        stats->fresh_probes = oracle.probes_used();
    }
    return path;
}

// True iff `path` visits every vertex exactly once and every consecutive
// pair is an edge whose true direction points along the path. On a valid
// instance this pins the unique total order, so it doubles as an
// independent correctness check for any solver output.
inline bool check_path(const instance& inst, const std::vector<int>& path) {
    if (static_cast<int>(path.size()) != inst.n) return false;
    std::vector<char> seen(inst.n, 0);
    for (int v : path) {
        if (v < 0 || v >= inst.n || seen[v]) return false;
        seen[v] = 1;
    }
    for (int i = 0; i + 1 < inst.n; ++i) {
        auto id = inst.edge_id(path[i], path[i + 1]);
        if (!id) return false;
        if (dir_tail(inst.edges[*id], inst.truth[*id]) != path[i]) return false;
    }
    return true;
}

// Number of left-to-right maxima of a permutation of 1..n.
inline int prefix_maxima_count(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    std::vector<char> seen(n, 0);
    for (int v : perm) {
        if (v < 1 || v > n || seen[v - 1])
            throw std::invalid_argument("prefix_maxima_count: input is not a permutation of 1..n");
        seen[v - 1] = 1;
    }
    int count = 0;
    int best = 0;
    for (int v : perm)
        if (v > best) {
            best = v;
            ++count;
        }
    return count;
}

// H_n by direct summation.
inline double harmonic(long long n) {
    double h = 0.0;
    for (long long k = 1; k <= n; ++k) h += 1.0 / static_cast<double>(k);
    return h;
}

struct maxima_report {
    int n = 0;
    long long trials = 0;
    double mean = 0.0;           // sample mean of prefix-maxima per trial
    int max_observed = 0;
    long long exceed_count = 0;  // trials whose count is > threshold
    double exceed_fraction = 0.0;
    double threshold = 0.0;      // 6 ln n + 6
    double expected_mean = 0.0;  // H_n
};

// Samples `trials` uniform permutations of 1..n (trial t uses the generator
// seeded with derive_seed(seed, t), so trials are replayable independently)
// and reports how the prefix-maxima counts compare to the H_n mean and the
// 6 ln n + 6 tail threshold.
inline maxima_report lemma_rand_check(int n, long long trials, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("lemma_rand_check: n must be >= 1");
    if (trials < 1) throw std::invalid_argument("lemma_rand_check: trials must be >= 1");
    maxima_report rep;
    rep.n = n;
    rep.trials = trials;
    rep.threshold = 6.0 * std::log(static_cast<double>(n)) + 6.0;
    rep.expected_mean = harmonic(n);
    std::vector<int> perm(n);
    long long total = 0;
    for (long long t = 0; t < trials; ++t) {
        rng64 gen(derive_seed(seed, static_cast<std::uint64_t>(t)));
        for (int i = 0; i < n; ++i) perm[i] = i + 1;
        shuffle_vec(perm, gen);
        int best = 0;
        int count = 0;
        for (int v : perm)
            if (v > best) {
                best = v;
                ++count;
            }
        total += count;
        if (count > rep.max_observed) rep.max_observed = count;
        if (static_cast<double>(count) > rep.threshold) ++rep.exceed_count;
    }
    rep.mean = static_cast<double>(total) / static_cast<double>(trials);
    rep.exceed_fraction =
        static_cast<double>(rep.exceed_count) / static_cast<double>(trials);
    return rep;
}

// Plain-text rendering of a maxima_report (one key per line).
inline std::string format_report(const maxima_report& rep) {
    std::string out;
    out += "n " + std::to_string(rep.n) + "\n";
    out += "trials " + std::to_string(rep.trials) + "\n";
    out += "mean " + std::to_string(rep.mean) + "\n";
    out += "expected_mean " + std::to_string(rep.expected_mean) + "\n";
    out += "max_observed " + std::to_string(rep.max_observed) + "\n";
    out += "threshold " + std::to_string(rep.threshold) + "\n";
    out += "exceed_count " + std::to_string(rep.exceed_count) + "\n";
    out += "exceed_fraction " + std::to_string(rep.exceed_fraction) + "\n";
    return out;
}

// Rebuilds the unique sequence y_1..y_n over values 1..n whose i-th element
// has rank ranks[i-1] among the first i elements. Rank tuples with
// ranks[i-1] in [1, i] are in bijection with permutations, and y_i is a
// left-to-right maximum exactly when ranks[i-1] == i.
inline std::vector<int> permutation_from_ranks(const std::vector<int>& ranks) {
    const int n = static_cast<int>(ranks.size());
    for (int i = 0; i < n; ++i)
        if (ranks[i] < 1 || ranks[i] > i + 1)
            throw std::invalid_argument("permutation_from_ranks: rank " +
                                        std::to_string(i + 1) + " out of range");
    std::vector<int> remaining(n);
    for (int i = 0; i < n; ++i) remaining[i] = i + 1;
    std::vector<int> perm(n, 0);
    for (int i = n - 1; i >= 0; --i) {
        perm[i] = remaining[ranks[i] - 1];
        remaining.erase(remaining.begin() + (ranks[i] - 1));
    }
    return perm;
}

// Alternative uniform sampler: draws the relative ranks independently
// (rank i uniform on [1, i], via uniform_below(gen, i) + 1 in order
// i = 1..n) and materializes the permutation. Distributionally identical
// to shuffling; exists so tests can cross-validate the two constructions.
inline std::vector<int> permutation_via_rank_insertion(int n, rng64& gen) {
    std::vector<int> ranks(n);
    for (int i = 0; i < n; ++i)
        ranks[i] = static_cast<int>(uniform_below(gen, static_cast<std::uint64_t>(i) + 1)) + 1;
    return permutation_from_ranks(ranks);
}

}  // namespace probesort
