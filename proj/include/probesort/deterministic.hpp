#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include <probesort/core.hpp>
#include <probesort/stepwise.hpp>

namespace probesort {

/// Direction per edge after overlaying known answers on the prediction:
/// resolved edges keep their revealed direction, the rest their predicted one.
inline orientation overlay_known(const orientation& prediction,
                                 const std::vector<std::uint8_t>& known,
                                 const orientation& known_dir) {
    PROBESORT_CHECK(known.size() == prediction.size() && known_dir.size() == prediction.size(),
                    "overlay size mismatch");
    orientation out = prediction;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (known[i]) out[i] = known_dir[i];
    return out;
}

/// Edge ids of some simple directed cycle of (V, orient(edges)), in traversal
/// order; empty if the graph is acyclic. Deterministic: depth-first from the
/// smallest vertex, neighbors in edge-id order.
inline std::vector<int> find_cycle(int n, const std::vector<edge_key>& edges,
                                   const orientation& dirs) {
    std::vector<std::vector<std::pair<int, int>>> succ(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < edges.size(); ++i)
        succ[static_cast<std::size_t>(dir_tail(edges[i], dirs[i]))].emplace_back(
            dir_head(edges[i], dirs[i]), static_cast<int>(i));
    std::vector<int> color(static_cast<std::size_t>(n), 0);  // 0 new, 1 on path, 2 done
    std::vector<std::size_t> next(static_cast<std::size_t>(n), 0);
    for (int s = 0; s < n; ++s) {
        if (color[static_cast<std::size_t>(s)]) continue;
        std::vector<int> path_v{s};
        std::vector<int> path_e{-1};  // edge entering path_v[i]
        color[static_cast<std::size_t>(s)] = 1;
        while (!path_v.empty()) {
            const int v = path_v.back();
            auto& iv = next[static_cast<std::size_t>(v)];
            if (iv < succ[static_cast<std::size_t>(v)].size()) {
                const auto [h, id] = succ[static_cast<std::size_t>(v)][iv++];
                if (color[static_cast<std::size_t>(h)] == 0) {
                    color[static_cast<std::size_t>(h)] = 1;
                    path_v.push_back(h);
                    path_e.push_back(id);
                } else if (color[static_cast<std::size_t>(h)] == 1) {
                    std::vector<int> cycle;
                    std::size_t pos = path_v.size() - 1;
                    while (path_v[pos] != h) cycle.push_back(path_e[pos--]);
                    std::reverse(cycle.begin(), cycle.end());
                    cycle.push_back(id);
                    return cycle;
                }
            } else {
                color[static_cast<std::size_t>(v)] = 2;
                path_v.pop_back();
                path_e.pop_back();
            }
        }
    }
    return {};
}

/// Kahn's algorithm taking the smallest-index source each step, stopped the
/// moment two sources coexist (those two are reported, smallest first). With
/// no stop the prefix is the full topological order — unless the graph is
/// cyclic, which leaves the prefix short.
struct topo_tie_result {
    std::vector<int> prefix;
    std::optional<std::pair<int, int>> tie;
};

inline topo_tie_result topo_until_tie(int n, const std::vector<edge_key>& edges,
                                      const orientation& dirs) {
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        succ[static_cast<std::size_t>(dir_tail(edges[i], dirs[i]))].push_back(
            dir_head(edges[i], dirs[i]));
        ++indeg[static_cast<std::size_t>(dir_head(edges[i], dirs[i]))];
    }
    std::set<int> sources;
    for (int v = 0; v < n; ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0) sources.insert(v);
    topo_tie_result r;
    while (!sources.empty()) {
        if (sources.size() >= 2) {
            auto it = sources.begin();
            const int v1 = *it++;
            r.tie = std::pair{v1, *it};
            return r;
        }
        const int v = *sources.begin();
        sources.erase(sources.begin());
        r.prefix.push_back(v);
        for (int h : succ[static_cast<std::size_t>(v)])
            if (--indeg[static_cast<std::size_t>(h)] == 0) sources.insert(h);
    }
    return r;
}

/// Deterministic solver. Keeps a ledger of the answers it has received and
/// works on the prediction overlaid with that ledger. Until the ledger alone
/// yields a Hamiltonian path, each round probes a batch of at most 3n edges:
///   - a directed cycle in the overlaid graph: all its edges (the truth is
///     acyclic, so one of them is mispredicted);
///   - otherwise, topological sort by smallest index until two sources
///     coexist; probe the consecutive pairs of the sorted prefix plus, when
///     the tie exists, every edge at the two tied sources. A full sort either
///     confirms the path or exposes a wrong edge; a tie always hides at least
///     one wrong edge among the batch.
/// Every round thus either finishes or eats one of the w mispredictions:
/// at most 3n(w+2) probes in total. Already-known edges are skipped, so the
/// request count equals the distinct-probe count in a solo run.
///
/// Decisions depend only on answers fed to this solver — never on what a
/// co-running solver may have probed — so runs replay identically alone or
/// combined.
///
/// Holds pointers to the caller's edge list and prediction; both must outlive
/// the solver.
class deterministic_solver : public stepwise_solver {
public:
    deterministic_solver(int n, const std::vector<edge_key>& edges, const orientation& prediction)
        : n_(n),
          edges_(&edges),
          pred_(&prediction),
          known_(edges.size(), 0),
          known_dir_(edges.size(), edge_dir::lo_to_hi),
          adj_(static_cast<std::size_t>(n)) {
        for (std::size_t i = 0; i < edges.size(); ++i) {
            adj_[static_cast<std::size_t>(edges[i].lo)].push_back(static_cast<int>(i));
            adj_[static_cast<std::size_t>(edges[i].hi)].push_back(static_cast<int>(i));
        }
    }

    solver_step step() override {
        if (!path_.empty()) return done{path_};
        if (pos_ < batch_.size())
            return need_probe{(*edges_)[static_cast<std::size_t>(batch_[pos_])]};
        next_round();
        if (!path_.empty()) return done{path_};
        return need_probe{(*edges_)[static_cast<std::size_t>(batch_[pos_])]};
    }

    void feed(const probe_result& result) override {
        PROBESORT_CHECK(pos_ < batch_.size(), "feed without a pending request");
        const int id = batch_[pos_];
        PROBESORT_CHECK(result.edge == (*edges_)[static_cast<std::size_t>(id)],
                        "feed does not match the requested edge");
        const auto i = static_cast<std::size_t>(id);
        PROBESORT_CHECK(!known_[i], "answer for an edge this solver already knows");
        known_[i] = 1;
        known_dir_[i] = result.dir;
        ++stats_.requests;
        if (result.fresh) ++stats_.fresh_probes;
        if (result.dir != (*pred_)[i]) {
            ++stats_.mispredicted_found;
            wrong_this_round_ = true;
        }
        ++pos_;
    }

    const run_stats& stats() const { return stats_; }

    /// The ledger overlaid on the prediction (test hook).
    orientation corrected_view() const { return overlay_known(*pred_, known_, known_dir_); }

private:
    /// The total order once the ledger alone contains a Hamiltonian path.
    std::optional<std::vector<int>> ledger_path() const {
        std::vector<std::vector<int>> succ(static_cast<std::size_t>(n_));
        for (std::size_t i = 0; i < known_.size(); ++i)
            if (known_[i])
                succ[static_cast<std::size_t>(dir_tail((*edges_)[i], known_dir_[i]))].push_back(
                    dir_head((*edges_)[i], known_dir_[i]));
        for (auto& s : succ) std::sort(s.begin(), s.end());
        return forced_topo_path(n_, succ);
    }

    void next_round() {
        if (const auto path = ledger_path()) {
            // No progress is only legal in the round that completed the path.
            path_ = *path;
            return;
        }
        PROBESORT_CHECK(stats_.iterations == 0 || wrong_this_round_,
                        "a round found no mispredicted edge yet the path is still unknown");
        wrong_this_round_ = false;
        ++stats_.iterations;

        const orientation dirs = overlay_known(*pred_, known_, known_dir_);
        std::vector<int> want = find_cycle(n_, *edges_, dirs);
        if (want.empty()) {
            const topo_tie_result topo = topo_until_tie(n_, *edges_, dirs);
            PROBESORT_CHECK(topo.tie || static_cast<int>(topo.prefix.size()) == n_,
                            "topological sort fell short without a tie");
            for (std::size_t i = 0; i + 1 < topo.prefix.size(); ++i) {
                const auto id = find_edge_id(*edges_, topo.prefix[i], topo.prefix[i + 1]);
                PROBESORT_CHECK(id.has_value(), "forced consecutive vertices share no edge");
                want.push_back(*id);
            }
            if (topo.tie) {
                for (int v : {topo.tie->first, topo.tie->second})
                    for (int id : adj_[static_cast<std::size_t>(v)]) want.push_back(id);
            }
        }
        batch_.clear();
        pos_ = 0;
        std::set<int> seen;
        for (int id : want)
            if (!known_[static_cast<std::size_t>(id)] && seen.insert(id).second)
                batch_.push_back(id);
        PROBESORT_CHECK(!batch_.empty(), "round would probe nothing it does not already know");
    }

    int n_;
    const std::vector<edge_key>* edges_;
    const orientation* pred_;
    std::vector<std::uint8_t> known_;
    orientation known_dir_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> batch_;
    std::size_t pos_ = 0;
    bool wrong_this_round_ = false;
    run_stats stats_;
    std::vector<int> path_;
};

/// Convenience wrapper: run the deterministic solver alone against one oracle.
inline std::vector<int> solve_deterministic(probe_oracle& oracle, run_stats* stats = nullptr) {
    deterministic_solver solver(oracle.n(), oracle.edges(), oracle.prediction());
    const std::vector<int> path = drive(solver, oracle);
    if (stats) *stats = solver.stats();
    return path;
}

}  // namespace probesort
