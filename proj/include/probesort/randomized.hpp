#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <probesort/core.hpp>
#include <probesort/order_state.hpp>
#include <probesort/rng.hpp>
#include <probesort/stepwise.hpp>

namespace probesort {

/// Randomized solver. Grows a settled set A one vertex at a time; a vertex
/// settles once its whole trusted in-neighborhood T_u is settled, totally
/// ordered, and its maximum element is confirmed. Every round scans for the
/// smallest-index unsettled vertex u carrying no valid witness of "u cannot
/// settle yet", then either
///   (a) T_u has an unsettled member: probe one uniformly at random — a wrong
///       direction shrinks T_u, a confirmed one is a witness (valid until that
///       member settles);
///   (b) T_u is settled but two members are incomparable in A: pick a
///       uniformly random such pair and learn the two edges from it into u — a
///       wrong direction shrinks T_u, two confirmations make the pair a
///       witness (valid until the pair becomes comparable);
///   (c) T_u is settled and totally ordered: learn the edge from its maximum
///       into u — wrong shrinks T_u, confirmed settles u, and the other
///       trusted in-edges follow by transitivity free of charge. Empty T_u
///       settles instantly.
/// Witness re-search is what costs probes; picking witnesses uniformly at
/// random keeps the number of re-searches per vertex logarithmic with high
/// probability, for O(n log n + w) probes in total.
///
/// The solver never requests an edge it has already resolved (its request
/// count equals its distinct-probe count in a solo run), so alternating it
/// with another solver wastes no turns.
///
/// Holds pointers to the caller's edge list and prediction; both must outlive
/// the solver.
class randomized_solver : public stepwise_solver {
public:
    randomized_solver(int n, const std::vector<edge_key>& edges, const orientation& prediction,
                      std::uint64_t seed)
        : n_(n), edges_(&edges), pred_(&prediction), state_(n, edges, prediction), gen_(seed) {
        stats_.cert_single.assign(static_cast<std::size_t>(n), 0);
        stats_.cert_pair.assign(static_cast<std::size_t>(n), 0);
        cert_.assign(static_cast<std::size_t>(n), witness{});
    }

    solver_step step() override {
        if (plan_) return need_probe{edge(plan_->req[plan_->next])};
        while (state_.settled_count() < n_) {
            const int u = scan();
            ++stats_.iterations;
            const std::vector<int> outside = state_.trusted_outside(u);
            if (!outside.empty()) {
                // (a) probe a uniformly random unsettled trusted in-neighbor.
                // Its edge cannot be resolved yet: a confirmation would have
                // made it u's witness and kept u out of the scan, a wrong
                // direction would have dropped it from T_u.
                const int v = outside[uniform_index(gen_, outside.size())];
                const int id = edge_id_checked(v, u);
                PROBESORT_CHECK(!state_.resolved(id), "unsettled trusted edge already resolved");
                start_plan(pending::kind_t::single, u, id, -1);
                return need_probe{edge(id)};
            }
            const auto pairs = state_.incomparable_trusted_pairs(u);
            if (!pairs.empty()) {
                // (b) learn both edges of a uniformly random incomparable
                // pair. Either edge may already be resolved from the time its
                // endpoint served as a witness; only the missing ones are
                // probed.
                const auto [v1, v2] = pairs[uniform_index(gen_, pairs.size())];
                const int id1 = edge_id_checked(v1, u);
                const int id2 = edge_id_checked(v2, u);
                if (start_plan(pending::kind_t::pair, u, id1, id2))
                    return need_probe{edge(plan_->req[0])};
                complete_pair(u, id1, id2);  // both known: a free witness
                continue;
            }
            const std::optional<int> t = state_.max_trusted(u);
            if (!t) {
                // (c) with nothing trusted: every predicted in-edge of u is
                // already known wrong, so u settles without probing.
                PROBESORT_CHECK(state_.trusted_in(u).empty(),
                                "maximum missing from a nonempty totally ordered trusted set");
                settle(u);
                continue;
            }
            const int id = edge_id_checked(*t, u);
            if (state_.resolved(id)) {
                // (c) maximum already confirmed while it was a witness.
                complete_ideal(u, id);
                continue;
            }
            start_plan(pending::kind_t::ideal, u, id, -1);
            return need_probe{edge(id)};
        }
        if (path_.empty()) path_ = extract_path();
        return done{path_};
    }

    void feed(const probe_result& result) override {
        PROBESORT_CHECK(plan_.has_value(), "feed without a pending request");
        pending& p = *plan_;
        const int id = p.req[p.next];
        PROBESORT_CHECK(result.edge == edge(id), "feed does not match the requested edge");
        ++stats_.requests;
        if (result.fresh) ++stats_.fresh_probes;
        const order_state::effect eff = state_.apply_probe(id, result.dir);
        PROBESORT_CHECK(eff.newly_resolved, "answer for an edge this solver already resolved");
        if (eff.exposed_wrong) ++stats_.mispredicted_found;

        if (p.next == 0 && p.req[1] >= 0) {
            p.next = 1;
            return;
        }
        const pending finished = p;
        plan_.reset();
        switch (finished.kind) {
            case pending::kind_t::single:
                if (!eff.exposed_wrong) {
                    // Confirmed unsettled in-neighbor: remember it as the
                    // reason u cannot settle yet.
                    const int v = other_end(id, finished.u);
                    PROBESORT_CHECK(!state_.settled(v), "confirmed witness is already settled");
                    cert_[static_cast<std::size_t>(finished.u)] = witness::single(v);
                    ++stats_.cert_single[static_cast<std::size_t>(finished.u)];
                }
                break;
            case pending::kind_t::pair:
                complete_pair(finished.u, finished.ids[0], finished.ids[1]);
                break;
            case pending::kind_t::ideal:
                if (confirmed(id)) complete_ideal(finished.u, id);
                break;
        }
    }

    const run_stats& stats() const { return stats_; }
    const order_state& state() const { return state_; }

    /// Test hook, called right after each vertex settles.
    void on_settled(std::function<void(int, const order_state&)> cb) {
        on_settled_ = std::move(cb);
    }

private:
    struct witness {
        enum class kind_t { none, single, pair } kind = kind_t::none;
        int v1 = -1;
        int v2 = -1;
        static witness single(int v) { return {kind_t::single, v, -1}; }
        static witness pair(int a, int b) { return {kind_t::pair, a, b}; }
    };

    struct pending {
        enum class kind_t { single, pair, ideal } kind;
        int u;
        int ids[2];  // the edges this round is about (ids[1] < 0 if only one)
        int req[2];  // the unresolved subset actually requested, -1 padded
        int next;    // position in req
    };

    /// Queue the unresolved edges of {id1, id2} for probing. False if nothing
    /// needs asking.
    bool start_plan(pending::kind_t kind, int u, int id1, int id2) {
        pending p{kind, u, {id1, id2}, {-1, -1}, 0};
        int k = 0;
        for (int id : {id1, id2})
            if (id >= 0 && !state_.resolved(id)) p.req[k++] = id;
        if (k == 0) return false;
        plan_.emplace(p);
        return true;
    }

    /// Both pair edges are resolved; store the pair as a witness if neither
    /// turned out mispredicted.
    void complete_pair(int u, int id1, int id2) {
        if (!confirmed(id1) || !confirmed(id2)) return;
        const int v1 = other_end(id1, u);
        const int v2 = other_end(id2, u);
        PROBESORT_CHECK(!state_.precedes(v1, v2) && !state_.precedes(v2, v1),
                        "stored pair witness is already comparable");
        cert_[static_cast<std::size_t>(u)] = witness::pair(v1, v2);
        ++stats_.cert_pair[static_cast<std::size_t>(u)];
    }

    /// The maximum trusted in-edge of u is confirmed: the rest of T_u's edges
    /// follow by transitivity and u settles.
    void complete_ideal(int u, int max_id) {
        PROBESORT_CHECK(confirmed(max_id), "settling on an unconfirmed maximum");
        for (int v : state_.trusted_in(u)) {
            const int vid = edge_id_checked(v, u);
            if (!state_.resolved(vid)) state_.resolve_deduced(vid);
            PROBESORT_CHECK(confirmed(vid), "trusted in-edge resolved against trust");
        }
        settle(u);
    }

    const edge_key& edge(int id) const { return (*edges_)[static_cast<std::size_t>(id)]; }

    bool confirmed(int id) const {
        return state_.resolved(id) &&
               state_.resolved_dir(id) == (*pred_)[static_cast<std::size_t>(id)];
    }

    int other_end(int id, int u) const {
        const edge_key& e = edge(id);
        return e.lo == u ? e.hi : e.lo;
    }

    int edge_id_checked(int a, int b) const {
        const std::optional<int> id = find_edge_id(*edges_, a, b);
        PROBESORT_CHECK(id.has_value(), "trusted in-neighbor without an edge");
        return *id;
    }

    /// Smallest-index unsettled vertex with no valid witness. Witnesses are
    /// only ever re-examined here, lazily; an invalidated one is dropped.
    int scan() {
        for (int u = 0; u < n_; ++u) {
            if (state_.settled(u)) continue;
            witness& c = cert_[static_cast<std::size_t>(u)];
            bool valid = false;
            if (c.kind == witness::kind_t::single) {
                valid = !state_.settled(c.v1);
            } else if (c.kind == witness::kind_t::pair) {
                valid = !state_.precedes(c.v1, c.v2) && !state_.precedes(c.v2, c.v1);
            }
            if (valid) continue;
            c = witness{};
            return u;
        }
        PROBESORT_CHECK(false, "every unsettled vertex carries a valid witness");
        return -1;
    }

    void settle(int u) {
        state_.add_settled(u);
        if (on_settled_) on_settled_(u, state_);
    }

    std::vector<int> extract_path() const {
        const orientation full = state_.full_orientation();
        const auto succ = oriented_adjacency(n_, *edges_, full);
        const auto path = forced_topo_path(n_, succ);
        PROBESORT_CHECK(path.has_value(), "resolved orientation has no forced order");
        return *path;
    }

    int n_;
    const std::vector<edge_key>* edges_;
    const orientation* pred_;
    order_state state_;
    rng64 gen_;
    run_stats stats_;
    std::vector<witness> cert_;
    std::optional<pending> plan_;
    std::vector<int> path_;
    std::function<void(int, const order_state&)> on_settled_;
};

/// Convenience wrapper: run the randomized solver alone against one oracle.
inline std::vector<int> solve_randomized(probe_oracle& oracle, std::uint64_t seed,
                                         run_stats* stats = nullptr) {
    randomized_solver solver(oracle.n(), oracle.edges(), oracle.prediction(), seed);
    const std::vector<int> path = drive(solver, oracle);
    if (stats) *stats = solver.stats();
    return path;
}

}  // namespace probesort
