#pragma once

#include <variant>
#include <vector>

#include <probesort/core.hpp>
#include <probesort/oracle.hpp>

namespace probesort {

/// A solver's request for the true direction of one edge.
struct need_probe {
    edge_key edge;
};

/// A solver's final answer: the hidden total order as a vertex sequence.
struct done {
    std::vector<int> path;
};

using solver_step = std::variant<need_probe, done>;

/// Per-run counters. Fields a solver does not track stay at their defaults.
struct run_stats {
    long long requests = 0;          // probe requests issued, cache hits included
    long long fresh_probes = 0;      // requests that hit a previously unprobed edge
    long long iterations = 0;        // outer-loop rounds (solver-specific meaning)
    long long mispredicted_found = 0;  // wrong edges this solver learned first-hand
    std::vector<int> cert_single;    // per vertex: confirmed-outsider witnesses stored
    std::vector<int> cert_pair;      // per vertex: incomparable-pair witnesses stored
};

/// Pull-based solver protocol. step() reports the next probe request (stable
/// across repeated calls) or the finished path; feed() delivers the oracle's
/// answer for exactly the edge last requested. Solvers never touch the oracle
/// directly, so several of them can share one oracle and one solver's probes
/// become another's cache hits.
class stepwise_solver {
public:
    virtual ~stepwise_solver() = default;
    virtual solver_step step() = 0;
    virtual void feed(const probe_result& result) = 0;
};

/// Runs one solver to completion against an oracle.
inline std::vector<int> drive(stepwise_solver& solver, probe_oracle& oracle) {
    for (;;) {
        solver_step s = solver.step();
        if (const done* d = std::get_if<done>(&s)) return d->path;
        solver.feed(oracle.probe(std::get<need_probe>(s).edge));
    }
}

}  // namespace probesort
