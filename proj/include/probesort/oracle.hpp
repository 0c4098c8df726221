#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <probesort/core.hpp>

namespace probesort {

/// Thrown when a solver asks about a vertex pair that is not an edge. This is
/// a solver bug by contract, so it derives from logic_error and is never
/// caught by the harness.
class non_edge_probe : public std::logic_error {
public:
    non_edge_probe(int u, int v)
        : std::logic_error("probe of non-edge {" + std::to_string(u) + "," + std::to_string(v) +
                           "}") {}
};

struct probe_result {
    edge_key edge;
    edge_dir dir;    // true direction of the edge
    bool fresh;      // false when this edge was already probed earlier
};

/// The only window a solver has onto the hidden orientation. Probing an edge
/// reveals its true direction; asking again returns the cached answer and does
/// not increase the cost. Cost = number of distinct edges probed.
class probe_oracle {
public:
    explicit probe_oracle(const instance& inst)
        : inst_(&inst), probed_(inst.edges.size(), 0) {}

    int n() const { return inst_->n; }
    const std::vector<edge_key>& edges() const { return inst_->edges; }
    const orientation& prediction() const { return inst_->prediction; }

    probe_result probe(int u, int v) {
        const auto id = inst_->edge_id(u, v);
        if (!id) throw non_edge_probe(u, v);
        return probe(*id);
    }

    probe_result probe(const edge_key& e) { return probe(e.lo, e.hi); }

    probe_result probe(int id) {
        const auto i = static_cast<std::size_t>(id);
        PROBESORT_CHECK(i < probed_.size(), "edge id out of range");
        const bool fresh = probed_[i] == 0;
        if (fresh) {
            probed_[i] = 1;
            ++distinct_;
        }
        return probe_result{inst_->edges[i], inst_->truth[i], fresh};
    }

    /// Number of distinct edges probed so far (the cost measure).
    long long probes_used() const { return distinct_; }

    bool is_probed(int id) const { return probed_[static_cast<std::size_t>(id)] != 0; }

    edge_dir probed_dir(int id) const {
        PROBESORT_CHECK(is_probed(id), "direction of an unprobed edge requested");
        return inst_->truth[static_cast<std::size_t>(id)];
    }

    /// All edge ids probed so far, ascending.
    std::vector<int> probed_ids() const {
        std::vector<int> ids;
        for (std::size_t i = 0; i < probed_.size(); ++i)
            if (probed_[i]) ids.push_back(static_cast<int>(i));
        return ids;
    }

    const instance& underlying() const { return *inst_; }

private:
    const instance* inst_;
    std::vector<std::uint8_t> probed_;
    long long distinct_ = 0;
};

}  // namespace probesort
