#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <probesort/core.hpp>

namespace probesort {

/// Knowledge a solver accumulates about the hidden orientation:
///   - which edges are resolved (probed, or deduced by transitivity) and how;
///   - per vertex u, the trusted in-neighborhood: predicted in-neighbors whose
///     edge is not yet known to be mispredicted (it only ever shrinks);
///   - a settled set A, grown one vertex at a time once every predicted
///     in-edge of the vertex is resolved;
///   - the partial order on A induced by resolved edges *inside* A only.
///     Deliberately not the order implied by every resolved edge: paths
///     through unsettled vertices are ignored, which keeps the order on A
///     growing in a seed-independent sequence (the property the probe-count
///     analysis of the randomized solver leans on).
///
/// Holds pointers to the caller's edge list and prediction; both must outlive
/// the state.
class order_state {
public:
    order_state(int n, const std::vector<edge_key>& edges, const orientation& prediction)
        : n_(n),
          edges_(&edges),
          prediction_(&prediction),
          resolved_(edges.size(), 0),
          deduced_(edges.size(), 0),
          dir_(edges.size(), edge_dir::lo_to_hi),
          trusted_(static_cast<std::size_t>(n)),
          adj_(static_cast<std::size_t>(n)),
          in_a_(static_cast<std::size_t>(n), 0),
          words_(static_cast<std::size_t>((n + 63) / 64)),
          desc_(static_cast<std::size_t>(n) * words_, 0) {
        PROBESORT_CHECK(prediction.size() == edges.size(), "prediction size mismatch");
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const int tail = dir_tail(edges[i], prediction[i]);
            const int head = dir_head(edges[i], prediction[i]);
            trusted_[static_cast<std::size_t>(head)].push_back(tail);
            adj_[static_cast<std::size_t>(edges[i].lo)].push_back(static_cast<int>(i));
            adj_[static_cast<std::size_t>(edges[i].hi)].push_back(static_cast<int>(i));
        }
        for (auto& t : trusted_) std::sort(t.begin(), t.end());
    }

    int n() const { return n_; }

    struct effect {
        bool newly_resolved = false;
        bool exposed_wrong = false;  // this call revealed a mispredicted edge
    };

    /// Record the true direction of an edge learned from a probe.
    effect apply_probe(int id, edge_dir true_dir) {
        const auto i = static_cast<std::size_t>(id);
        PROBESORT_CHECK(i < resolved_.size(), "edge id out of range");
        if (resolved_[i]) {
            PROBESORT_CHECK(dir_[i] == true_dir, "probe contradicts earlier resolution");
            return {};
        }
        resolved_[i] = 1;
        dir_[i] = true_dir;
        effect e;
        e.newly_resolved = true;
        if (true_dir != (*prediction_)[i]) {
            e.exposed_wrong = true;
            drop_trust(id);
        }
        return e;
    }

    /// Record that an edge is known to follow its prediction without probing
    /// (transitivity through the settled order).
    void resolve_deduced(int id) {
        const auto i = static_cast<std::size_t>(id);
        PROBESORT_CHECK(i < resolved_.size(), "edge id out of range");
        PROBESORT_CHECK(!resolved_[i], "deducing an already resolved edge");
        resolved_[i] = 1;
        deduced_[i] = 1;
        dir_[i] = (*prediction_)[i];
    }

    bool resolved(int id) const { return resolved_[static_cast<std::size_t>(id)] != 0; }
    bool deduced(int id) const { return deduced_[static_cast<std::size_t>(id)] != 0; }

    edge_dir resolved_dir(int id) const {
        PROBESORT_CHECK(resolved(id), "direction of an unresolved edge requested");
        return dir_[static_cast<std::size_t>(id)];
    }

    /// Trusted in-neighborhood of u, ascending by vertex index.
    const std::vector<int>& trusted_in(int u) const {
        return trusted_[static_cast<std::size_t>(u)];
    }

    /// Members of the trusted in-neighborhood not yet settled.
    std::vector<int> trusted_outside(int u) const {
        std::vector<int> out;
        for (int v : trusted_in(u))
            if (!in_a_[static_cast<std::size_t>(v)]) out.push_back(v);
        return out;
    }

    /// All unordered pairs in u's trusted in-neighborhood that the settled
    /// order does not yet compare. Requires every member settled.
    std::vector<std::pair<int, int>> incomparable_trusted_pairs(int u) const {
        const std::vector<int>& t = trusted_in(u);
        std::vector<std::pair<int, int>> pairs;
        for (std::size_t i = 0; i < t.size(); ++i) {
            PROBESORT_CHECK(in_a_[static_cast<std::size_t>(t[i])],
                            "incomparable-pair query with unsettled trusted vertex");
            for (std::size_t j = i + 1; j < t.size(); ++j)
                if (!precedes(t[i], t[j]) && !precedes(t[j], t[i])) pairs.emplace_back(t[i], t[j]);
        }
        return pairs;
    }

    /// Largest member of u's trusted in-neighborhood under the settled order.
    /// nullopt when the set is empty or not totally ordered.
    std::optional<int> max_trusted(int u) const {
        const std::vector<int>& t = trusted_in(u);
        if (t.empty()) return std::nullopt;
        int best = t[0];
        for (std::size_t i = 1; i < t.size(); ++i) {
            if (precedes(best, t[i])) {
                best = t[i];
            } else if (!precedes(t[i], best)) {
                return std::nullopt;  // incomparable pair: no maximum yet
            }
        }
        for (int v : t)
            PROBESORT_CHECK(v == best || precedes(v, best), "settled order not total on trusted set");
        return best;
    }

    bool settled(int v) const { return in_a_[static_cast<std::size_t>(v)] != 0; }
    int settled_count() const { return static_cast<int>(order_.size()); }
    const std::vector<int>& settled_order() const { return order_; }

    /// a comes before b in the partial order of the settled set (directed path
    /// of resolved edges visiting settled vertices only). False unless both
    /// are settled.
    bool precedes(int a, int b) const {
        if (a == b || !settled(a) || !settled(b)) return false;
        return (desc_[static_cast<std::size_t>(a) * words_ + static_cast<std::size_t>(b) / 64] >>
                (static_cast<unsigned>(b) % 64)) &
               1u;
    }

    /// Settle u. Precondition (checked): every edge between u and an already
    /// settled vertex is resolved, and so is every predicted in-edge of u.
    void add_settled(int u) {
        PROBESORT_CHECK(!settled(u), "vertex settled twice");
        for (int id : adj_[static_cast<std::size_t>(u)]) {
            const auto i = static_cast<std::size_t>(id);
            const edge_key& e = (*edges_)[i];
            const int other = e.lo == u ? e.hi : e.lo;
            const bool predicted_in = dir_head(e, (*prediction_)[i]) == u;
            if (predicted_in || settled(other))
                PROBESORT_CHECK(resolved_[i], "settling a vertex with an unresolved incident edge");
        }
        in_a_[static_cast<std::size_t>(u)] = 1;
        order_.push_back(u);
        rebuild_closure();
    }

    /// The complete orientation once everything is resolved.
    orientation full_orientation() const {
        for (std::size_t i = 0; i < resolved_.size(); ++i)
            PROBESORT_CHECK(resolved_[i], "orientation requested while edges are unresolved");
        return dir_;
    }

private:
    void drop_trust(int id) {
        const auto i = static_cast<std::size_t>(id);
        const int tail = dir_tail((*edges_)[i], (*prediction_)[i]);
        const int head = dir_head((*edges_)[i], (*prediction_)[i]);
        std::vector<int>& t = trusted_[static_cast<std::size_t>(head)];
        const auto it = std::lower_bound(t.begin(), t.end(), tail);
        PROBESORT_CHECK(it != t.end() && *it == tail, "trusted in-neighbor missing on removal");
        t.erase(it);
    }

    /// Recompute descendant bitsets of the settled subgraph: desc_[v] bit x is
    /// set iff a resolved path v -> ... -> x exists through settled vertices.
    void rebuild_closure() {
        std::fill(desc_.begin(), desc_.end(), 0);
        std::vector<std::vector<int>> succ(static_cast<std::size_t>(n_));
        std::vector<int> indeg(static_cast<std::size_t>(n_), 0);
        for (int v : order_) {
            for (int id : adj_[static_cast<std::size_t>(v)]) {
                const auto i = static_cast<std::size_t>(id);
                const edge_key& e = (*edges_)[i];
                if (dir_tail(e, dir_[i]) != v) continue;  // handle each edge at its tail
                const int head = dir_head(e, dir_[i]);
                if (!settled(head)) continue;
                PROBESORT_CHECK(resolved_[i], "unresolved edge inside the settled set");
                succ[static_cast<std::size_t>(v)].push_back(head);
                ++indeg[static_cast<std::size_t>(head)];
            }
        }
        // Kahn order of the settled subgraph, then pull descendant sets
        // backward across each edge.
        std::vector<int> topo;
        topo.reserve(order_.size());
        std::vector<int> stack;
        for (int v : order_)
            if (indeg[static_cast<std::size_t>(v)] == 0) stack.push_back(v);
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            topo.push_back(v);
            for (int h : succ[static_cast<std::size_t>(v)])
                if (--indeg[static_cast<std::size_t>(h)] == 0) stack.push_back(h);
        }
        PROBESORT_CHECK(topo.size() == order_.size(), "settled subgraph has a cycle");
        for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
            const auto v = static_cast<std::size_t>(*it);
            for (int h : succ[v]) {
                const auto hw = static_cast<std::size_t>(h);
                desc_[v * words_ + hw / 64] |= 1ull << (static_cast<unsigned>(h) % 64);
                for (std::size_t w = 0; w < words_; ++w)
                    desc_[v * words_ + w] |= desc_[hw * words_ + w];
            }
        }
    }

    int n_;
    const std::vector<edge_key>* edges_;
    const orientation* prediction_;
    std::vector<std::uint8_t> resolved_;
    std::vector<std::uint8_t> deduced_;
    orientation dir_;
    std::vector<std::vector<int>> trusted_;  // per head vertex, sorted
    std::vector<std::vector<int>> adj_;      // incident edge ids per vertex
    std::vector<std::uint8_t> in_a_;
    std::vector<int> order_;                 // settle sequence
    std::size_t words_;
    std::vector<std::uint64_t> desc_;        // n x words_ bit matrix
};

}  // namespace probesort
