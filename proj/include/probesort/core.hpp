#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace probesort {

// Internal invariant check that survives NDEBUG. A failure means a bug in a
// solver or in the harness, never bad user input.
#define PROBESORT_CHECK(cond, msg)                                         \
    do {                                                                   \
        if (!(cond)) throw ::probesort::internal_error(msg, __FILE__, __LINE__); \
    } while (0)

class internal_error : public std::logic_error {
public:
    internal_error(const std::string& msg, const char* file, int line)
        : std::logic_error(format(msg, file, line)) {}

private:
    static std::string format(const std::string& msg, const char* file, int line) {
        std::ostringstream os;
        os << "internal error: " << msg << " (" << file << ":" << line << ")";
        return os.str();
    }
};

/// Undirected edge between two vertex indices, stored with lo < hi.
struct edge_key {
    int lo = 0;
    int hi = 0;
    friend auto operator<=>(const edge_key&, const edge_key&) = default;
};

inline edge_key make_edge(int u, int v) {
    return u < v ? edge_key{u, v} : edge_key{v, u};
}

/// Direction of one undirected edge.
enum class edge_dir : std::uint8_t {
    lo_to_hi = 0,
    hi_to_lo = 1,
};

inline edge_dir flip(edge_dir d) {
    return d == edge_dir::lo_to_hi ? edge_dir::hi_to_lo : edge_dir::lo_to_hi;
}

inline int dir_tail(const edge_key& e, edge_dir d) { return d == edge_dir::lo_to_hi ? e.lo : e.hi; }
inline int dir_head(const edge_key& e, edge_dir d) { return d == edge_dir::lo_to_hi ? e.hi : e.lo; }

/// Direction of edge {u,v} when it points u -> v. Requires u != v.
inline edge_dir dir_from_to(int u, int v) {
    return u < v ? edge_dir::lo_to_hi : edge_dir::hi_to_lo;
}

/// One direction per edge, parallel to an instance's sorted edge list.
using orientation = std::vector<edge_dir>;

/// A problem instance: an undirected graph, the hidden truth orientation
/// (acyclic, with a directed Hamiltonian path) and a predicted orientation of
/// the same edge set. Immutable after construction; solver state lives in the
/// solvers.
struct instance {
    int n = 0;
    std::vector<edge_key> edges;  // sorted by (lo, hi), no duplicates
    orientation truth;            // parallel to edges
    orientation prediction;       // parallel to edges

    int edge_count() const { return static_cast<int>(edges.size()); }

    /// Index of the undirected edge {u,v}, or nullopt if absent.
    std::optional<int> edge_id(int u, int v) const {
        const edge_key key = make_edge(u, v);
        const auto it = std::lower_bound(edges.begin(), edges.end(), key);
        if (it == edges.end() || *it != key) return std::nullopt;
        return static_cast<int>(it - edges.begin());
    }
};

/// Binary search over a sorted edge list shared by the solver-side types.
inline std::optional<int> find_edge_id(const std::vector<edge_key>& edges, int u, int v) {
    const edge_key key = make_edge(u, v);
    const auto it = std::lower_bound(edges.begin(), edges.end(), key);
    if (it == edges.end() || *it != key) return std::nullopt;
    return static_cast<int>(it - edges.begin());
}

/// Builds an instance from unsorted parts. Throws std::invalid_argument on
/// structural problems (bad vertex ids, self loops, duplicates, size
/// mismatches). Semantic validity (acyclicity, Hamiltonian path) is checked
/// separately by validate_instance.
inline instance make_instance(int n, std::vector<edge_key> edges, orientation truth,
                              orientation prediction) {
    if (n < 1) throw std::invalid_argument("instance needs at least one vertex");
    if (truth.size() != edges.size() || prediction.size() != edges.size())
        throw std::invalid_argument("orientation size does not match edge count");
    for (const edge_key& e : edges) {
        if (e.lo >= e.hi) throw std::invalid_argument("edge endpoints must satisfy lo < hi");
        if (e.lo < 0 || e.hi >= n) throw std::invalid_argument("edge endpoint out of range");
    }
    std::vector<int> order(edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return edges[static_cast<std::size_t>(a)] < edges[static_cast<std::size_t>(b)]; });
    instance inst;
    inst.n = n;
    inst.edges.reserve(edges.size());
    inst.truth.reserve(edges.size());
    inst.prediction.reserve(edges.size());
    for (int idx : order) {
        const auto i = static_cast<std::size_t>(idx);
        if (!inst.edges.empty() && inst.edges.back() == edges[i])
            throw std::invalid_argument("duplicate edge");
        inst.edges.push_back(edges[i]);
        inst.truth.push_back(truth[i]);
        inst.prediction.push_back(prediction[i]);
    }
    return inst;
}

/// Successor lists of the directed graph (V, orient(edges)), sorted.
inline std::vector<std::vector<int>> oriented_adjacency(int n, const std::vector<edge_key>& edges,
                                                        const orientation& orient) {
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < edges.size(); ++i) {
        succ[static_cast<std::size_t>(dir_tail(edges[i], orient[i]))].push_back(
            dir_head(edges[i], orient[i]));
    }
    for (auto& s : succ) std::sort(s.begin(), s.end());
    return succ;
}

/// Kahn's algorithm; true iff the directed graph is acyclic.
inline bool is_acyclic(int n, const std::vector<std::vector<int>>& succ) {
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (const auto& s : succ)
        for (int v : s) ++indeg[static_cast<std::size_t>(v)];
    std::vector<int> stack;
    for (int v = 0; v < n; ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0) stack.push_back(v);
    int processed = 0;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        ++processed;
        for (int w : succ[static_cast<std::size_t>(v)])
            if (--indeg[static_cast<std::size_t>(w)] == 0) stack.push_back(w);
    }
    return processed == n;
}

/// The unique vertex order of a directed graph whose topological sort is
/// forced (exactly one in-degree-0 vertex at every step) and whose consecutive
/// vertices are connected by edges. This holds iff the graph contains a
/// directed Hamiltonian path, in which case that path is returned.
inline std::optional<std::vector<int>> forced_topo_path(int n,
                                                        const std::vector<std::vector<int>>& succ) {
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (const auto& s : succ)
        for (int v : s) ++indeg[static_cast<std::size_t>(v)];
    std::vector<int> zero;
    for (int v = 0; v < n; ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0) zero.push_back(v);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    while (!zero.empty()) {
        if (zero.size() != 1) return std::nullopt;  // tie: order not forced
        const int v = zero.back();
        zero.pop_back();
        order.push_back(v);
        for (int w : succ[static_cast<std::size_t>(v)])
            if (--indeg[static_cast<std::size_t>(w)] == 0) zero.push_back(w);
    }
    if (static_cast<int>(order.size()) != n) return std::nullopt;  // cycle
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const auto& s = succ[static_cast<std::size_t>(order[i])];
        if (!std::binary_search(s.begin(), s.end(), order[i + 1])) return std::nullopt;
    }
    return order;
}

struct validation_report {
    bool acyclic = false;
    bool hamiltonian = false;
    std::vector<std::string> violations;

    bool ok() const { return acyclic && hamiltonian; }
};

/// Checks the two semantic guarantees of the model: the truth orientation is
/// acyclic and realizes a directed Hamiltonian path.
inline validation_report validate_instance(const instance& inst) {
    validation_report report;
    const auto succ = oriented_adjacency(inst.n, inst.edges, inst.truth);
    report.acyclic = is_acyclic(inst.n, succ);
    if (!report.acyclic) {
        report.violations.push_back("truth orientation contains a directed cycle");
        return report;
    }
    report.hamiltonian = forced_topo_path(inst.n, succ).has_value();
    if (!report.hamiltonian)
        report.violations.push_back(
            "truth orientation has no directed Hamiltonian path (topological order is not forced)");
    return report;
}

/// The hidden total order, recovered from the truth orientation. Verifier-side
/// only; solvers must go through the probe oracle.
inline std::vector<int> true_ham_path(const instance& inst) {
    const auto succ = oriented_adjacency(inst.n, inst.edges, inst.truth);
    auto path = forced_topo_path(inst.n, succ);
    if (!path) throw std::invalid_argument("invalid instance: no forced Hamiltonian order");
    return *path;
}

/// Number of edges whose predicted direction disagrees with the truth.
inline int mispredicted_count(const instance& inst) {
    int w = 0;
    for (std::size_t i = 0; i < inst.edges.size(); ++i)
        if (inst.truth[i] != inst.prediction[i]) ++w;
    return w;
}

/// Parse failure with the 1-based line number of the offending input line.
class parse_error : public std::runtime_error {
public:
    parse_error(int line, const std::string& cause)
        : std::runtime_error("line " + std::to_string(line) + ": " + cause), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Canonical text form:
///   n <n> m <m>
///   <lo> <hi> <t> <p>   (one line per edge, edges sorted by (lo, hi);
///                        t/p = 0 means lo->hi, 1 means hi->lo)
/// Lines whose first non-space character is '#' are comments.
inline std::string serialize(const instance& inst) {
    std::ostringstream os;
    os << "n " << inst.n << " m " << inst.edge_count() << "\n";
    for (std::size_t i = 0; i < inst.edges.size(); ++i) {
        os << inst.edges[i].lo << ' ' << inst.edges[i].hi << ' '
           << static_cast<int>(inst.truth[i]) << ' ' << static_cast<int>(inst.prediction[i])
           << "\n";
    }
    return os.str();
}

namespace detail {

inline bool blank_or_comment(std::string_view line) {
    for (char c : line) {
        if (c == '#') return true;
        if (c != ' ' && c != '\t' && c != '\r') return false;
    }
    return true;
}

inline long long parse_int_token(std::istringstream& in, int line, const char* what) {
    long long value = 0;
    if (!(in >> value)) throw parse_error(line, std::string("expected integer for ") + what);
    return value;
}

}  // namespace detail

inline instance parse(std::string_view text) {
    std::vector<edge_key> edges;
    orientation truth;
    orientation prediction;
    std::set<edge_key> seen;
    long long n = -1, m = -1;
    long long edges_seen = 0;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (detail::blank_or_comment(line)) continue;

        std::istringstream in{std::string(line)};
        if (n < 0) {
            std::string kn, km;
            if (!(in >> kn) || kn != "n")
                throw parse_error(line_no, "expected header \"n <n> m <m>\"");
            n = detail::parse_int_token(in, line_no, "n");
            if (!(in >> km) || km != "m")
                throw parse_error(line_no, "expected header \"n <n> m <m>\"");
            m = detail::parse_int_token(in, line_no, "m");
            std::string rest;
            if (in >> rest) throw parse_error(line_no, "trailing text after header");
            if (n < 1) throw parse_error(line_no, "vertex count must be at least 1");
            if (m < 0) throw parse_error(line_no, "edge count must be nonnegative");
            continue;
        }
        if (edges_seen == m) throw parse_error(line_no, "unexpected line after last edge");
        const long long u = detail::parse_int_token(in, line_no, "u");
        const long long v = detail::parse_int_token(in, line_no, "v");
        const long long t = detail::parse_int_token(in, line_no, "t");
        const long long p = detail::parse_int_token(in, line_no, "p");
        std::string rest;
        if (in >> rest) throw parse_error(line_no, "trailing text after edge fields");
        if (u < 0 || v >= n || u >= v)
            throw parse_error(line_no, "edge endpoints must satisfy 0 <= u < v < n");
        if (t != 0 && t != 1) throw parse_error(line_no, "truth flag must be 0 or 1");
        if (p != 0 && p != 1) throw parse_error(line_no, "prediction flag must be 0 or 1");
        if (!seen.insert(edge_key{static_cast<int>(u), static_cast<int>(v)}).second)
            throw parse_error(line_no, "duplicate edge");
        edges.push_back(edge_key{static_cast<int>(u), static_cast<int>(v)});
        truth.push_back(static_cast<edge_dir>(t));
        prediction.push_back(static_cast<edge_dir>(p));
        ++edges_seen;
    }
    if (n < 0) throw parse_error(line_no, "missing header \"n <n> m <m>\"");
    if (edges_seen != m)
        throw parse_error(line_no, "expected " + std::to_string(m) + " edge lines, got " +
                                       std::to_string(edges_seen));
    try {
        return make_instance(static_cast<int>(n), std::move(edges), std::move(truth),
                             std::move(prediction));
    } catch (const std::invalid_argument& ex) {
        throw parse_error(line_no, ex.what());
    }
}

}  // namespace probesort
