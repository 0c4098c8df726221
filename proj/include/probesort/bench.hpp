#pragma once

// Experiment orchestration: the alternating two-solver combiner, single-run
// and grid benchmarking with fully seeded replay, the versioned CSV schema,
// and the probe-budget ratio report.

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "probesort/core.hpp"
#include "probesort/deterministic.hpp"
#include "probesort/generators.hpp"
#include "probesort/oracle.hpp"
#include "probesort/randomized.hpp"
#include "probesort/rng.hpp"
#include "probesort/stepwise.hpp"
#include "probesort/verify.hpp"

namespace probesort {

enum class algo_kind { rand, det, brute, combined };

inline const char* to_string(algo_kind a) {
    switch (a) {
        case algo_kind::rand: return "rand";
        case algo_kind::det: return "det";
        case algo_kind::brute: return "brute";
        case algo_kind::combined: return "combined";
    }
    PROBESORT_CHECK(false, "unknown algo_kind");
    return "";
}

inline algo_kind algo_from_string(std::string_view name) {
    if (name == "rand") return algo_kind::rand;
    if (name == "det") return algo_kind::det;
    if (name == "brute") return algo_kind::brute;
    if (name == "combined") return algo_kind::combined;
    throw std::invalid_argument("unknown algorithm name: " + std::string(name));
}

struct bench_record {
    algo_kind algo = algo_kind::rand;
    int n = 0;
    long long m = 0;
    long long w = 0;
    std::uint64_t seed = 0;
    long long probes = 0;
    bool correct = false;
    long long iterations = 0;
    double wall_ms = 0.0;
};

// --- alternating combiner ----------------------------------------------

struct combine_result {
    std::vector<int> path;
    long long probes = 0;  // distinct edges probed by the union
    int winner = 0;        // 0 = first solver finished, 1 = second
    long long turns = 0;   // satisfied requests across both solvers
};

// Alternates single probe requests between the two solvers (first solver
// moves first) over one shared oracle. A request answered from the oracle's
// cache still consumes that solver's turn. The first solver to report a
// finished path wins; if the other one is also finished at that tick the
// paths must agree.
inline combine_result alternate_combine(stepwise_solver& first,
                                        stepwise_solver& second,
                                        probe_oracle& oracle) {
    combine_result out;
    for (long long turn = 0;; ++turn) {
        stepwise_solver& cur = (turn % 2 == 0) ? first : second;
        stepwise_solver& other = (turn % 2 == 0) ? second : first;
        auto step = cur.step();
        if (auto* fin = std::get_if<done>(&step)) {
            auto peek = other.step();
            if (auto* also = std::get_if<done>(&peek))
                PROBESORT_CHECK(also->path == fin->path,
                                "combined solvers finished with different paths");
            out.path = fin->path;
            out.probes = oracle.probes_used();
            out.winner = static_cast<int>(turn % 2);
            out.turns = turn;
            return out;
        }
        cur.feed(oracle.probe(std::get<need_probe>(step).edge));
    }
}

// --- single runs ---------------------------------------------------------

// Runs one algorithm against a fresh oracle over `inst` and fills a record.
// `solver_seed` feeds the randomized solver (and the randomized half of the
// combined run); det/brute ignore it. record.seed is set to `solver_seed`;
// grid runs overwrite it with their per-cell replay seed.
inline bench_record run_algo(algo_kind kind, const instance& inst,
                             std::uint64_t solver_seed,
                             run_stats* stats_out = nullptr) {
    bench_record rec;
    rec.algo = kind;
    rec.n = inst.n;
    rec.m = static_cast<long long>(inst.edges.size());
    rec.w = mispredicted_count(inst);
    rec.seed = solver_seed;

    probe_oracle oracle(inst);
    run_stats stats;
    std::vector<int> path;
    const auto t0 = std::chrono::steady_clock::now();
    switch (kind) {
        case algo_kind::rand:
            path = solve_randomized(oracle, solver_seed, &stats);
            break;
        case algo_kind::det:
            path = solve_deterministic(oracle, &stats);
            break;
        case algo_kind::brute:
            path = brute_force_solve(oracle, &stats);
            stats.iterations = 1;
            break;
        case algo_kind::combined: {
            randomized_solver a(inst.n, inst.edges, inst.prediction, solver_seed);
            deterministic_solver b(inst.n, inst.edges, inst.prediction);
            auto res = alternate_combine(a, b, oracle);
            path = res.path;
            stats = (res.winner == 0) ? a.stats() : b.stats();
            break;
        }
    }
    const auto t1 = std::chrono::steady_clock::now();
    rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rec.probes = oracle.probes_used();
    rec.iterations = stats.iterations;
    rec.correct = check_path(inst, path);
    if (stats_out) *stats_out = stats;
    return rec;
}

// --- grid sweeps ---------------------------------------------------------

struct grid_spec {
    std::vector<algo_kind> algos{algo_kind::rand};
    std::vector<int> ns{100};
    std::vector<long long> ws{0};
    std::vector<double> densities;  // empty: use `extra` instead
    long long extra = -1;           // -1: defaults to 3n chords per instance
    gen_family family = gen_family::random;
    int trials = 1;
    std::uint64_t seed = 0;
};

// Thrown when a grid run produces an incorrect path. carries a shell
// reproduction command for the offending cell.
struct bench_failure : std::runtime_error {
    explicit bench_failure(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

inline gen_spec cell_spec(const grid_spec& grid, int n, long long w,
                          std::optional<double> density, std::uint64_t inst_seed) {
    gen_spec gs;
    gs.n = n;
    gs.w = w;
    gs.family = grid.family;
    gs.seed = inst_seed;
    gs.density = density;
    if (!density) gs.extra_edges = grid.extra >= 0 ? grid.extra : 3LL * n;
    return gs;
}

inline std::string repro_command(const grid_spec& grid, const gen_spec& gs,
                                 algo_kind algo, std::uint64_t solver_seed) {
    std::string cmd = "probesort gen --family " + std::string(to_string(gs.family)) +
                      " --n " + std::to_string(gs.n);
    if (gs.density)
        cmd += " --density " + std::to_string(*gs.density);
    else
        cmd += " --extra " + std::to_string(gs.extra_edges);
    cmd += " --w " + std::to_string(gs.w) + " --seed " + std::to_string(gs.seed) +
           " --out repro.txt && probesort run --algo " +
           std::string(to_string(algo)) + " --instance repro.txt --seed " +
           std::to_string(solver_seed);
    (void)grid;
    return cmd;
}

}  // namespace detail

// Runs every (n, w[, density], trial) cell once per algorithm. All algorithms
// of a cell share one generated instance. Seed derivation per cell with index
// k (in loop order n, w, density, trial): run_seed = derive_seed(grid.seed, k),
// instance seed = derive_seed(run_seed, 0), solver seed = derive_seed(run_seed, 1).
// Each emitted record carries run_seed, which replays the row exactly.
// An incorrect path aborts the sweep with a reproduction command.
inline std::vector<bench_record> run_grid(const grid_spec& grid) {
    PROBESORT_CHECK(!grid.algos.empty(), "grid needs at least one algorithm");
    PROBESORT_CHECK(grid.trials >= 1, "grid needs at least one trial");
    std::vector<std::optional<double>> densities;
    if (grid.densities.empty())
        densities.push_back(std::nullopt);
    else
        for (double d : grid.densities) densities.emplace_back(d);

    std::vector<bench_record> rows;
    std::uint64_t cell = 0;
    for (int n : grid.ns)
        for (long long w : grid.ws)
            for (auto density : densities)
                for (int trial = 0; trial < grid.trials; ++trial, ++cell) {
                    const std::uint64_t run_seed = derive_seed(grid.seed, cell);
                    const std::uint64_t inst_seed = derive_seed(run_seed, 0);
                    const std::uint64_t solver_seed = derive_seed(run_seed, 1);
                    const auto gs = detail::cell_spec(grid, n, w, density, inst_seed);
                    const auto inst = generate(gs);
                    for (algo_kind algo : grid.algos) {
                        auto rec = run_algo(algo, inst, solver_seed);
                        rec.seed = run_seed;
                        if (!rec.correct)
                            throw bench_failure(
                                "incorrect path from " + std::string(to_string(algo)) +
                                "; reproduce with: " +
                                detail::repro_command(grid, gs, algo, solver_seed));
                        rows.push_back(rec);
                    }
                }
    return rows;
}

// --- CSV schema ----------------------------------------------------------

inline constexpr std::string_view csv_version_comment = "# probesort-csv v1";
inline constexpr std::string_view csv_header =
    "algo,n,m,w,seed,probes,correct,iterations,wall_ms";

inline std::string to_csv_row(const bench_record& r) {
    std::string row;
    row += to_string(r.algo);
    row += ',' + std::to_string(r.n);
    row += ',' + std::to_string(r.m);
    row += ',' + std::to_string(r.w);
    row += ',' + std::to_string(r.seed);
    row += ',' + std::to_string(r.probes);
    row += ',' + std::string(r.correct ? "1" : "0");
    row += ',' + std::to_string(r.iterations);
    row += ',' + std::to_string(r.wall_ms);
    return row;
}

inline void write_csv(std::ostream& out, const std::vector<bench_record>& rows) {
    out << csv_version_comment << '\n' << csv_header << '\n';
    for (const auto& r : rows) out << to_csv_row(r) << '\n';
}

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

inline bool csv_bool(std::string_view f, int line_no) {
    if (f == "1" || f == "true") return true;
    if (f == "0" || f == "false") return false;
    throw parse_error(line_no, "bad boolean field '" + std::string(f) + "'");
}

}  // namespace detail

// Parses CSV text produced by write_csv. Comment lines (leading '#') and
// blank lines are skipped; the first data line must be the exact header.
inline std::vector<bench_record> parse_csv(std::string_view text) {
    std::vector<bench_record> rows;
    bool header_seen = false;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line = (nl == std::string_view::npos)
                                    ? text.substr(pos)
                                    : text.substr(pos, nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != csv_header)
                throw parse_error(line_no, "expected CSV header '" +
                                               std::string(csv_header) + "'");
            header_seen = true;
            continue;
        }
        auto fields = detail::split_fields(line);
        if (fields.size() != 9)
            throw parse_error(line_no, "expected 9 fields, found " +
                                           std::to_string(fields.size()));
        bench_record r;
        try {
            r.algo = algo_from_string(fields[0]);
            r.n = std::stoi(std::string(fields[1]));
            r.m = std::stoll(std::string(fields[2]));
            r.w = std::stoll(std::string(fields[3]));
            r.seed = std::stoull(std::string(fields[4]));
            r.probes = std::stoll(std::string(fields[5]));
            r.correct = detail::csv_bool(fields[6], line_no);
            r.iterations = std::stoll(std::string(fields[7]));
            r.wall_ms = std::stod(std::string(fields[8]));
        } catch (const parse_error&) {
            throw;
        } catch (const std::exception& e) {
            throw parse_error(line_no, std::string("bad field: ") + e.what());
        }
        rows.push_back(r);
    }
    if (!header_seen) throw parse_error(line_no, "missing CSV header");
    return rows;
}

// --- probe-budget report ---------------------------------------------------

struct bound_summary {
    long long rand_rows = 0;
    long long det_rows = 0;
    double rand_max_ratio = 0.0;  // max probes / (n ln n + w + 1)
    double det_max_ratio = 0.0;   // max probes / (n (w + 2))
    double rand_threshold = 40.0;
    double det_threshold = 3.0;
    bool rand_ok = true;  // vacuously true without rand rows
    bool det_ok = true;
};

// Normalizes probe counts of rand/det rows against their analytic budgets
// and flags regressions against the stored thresholds. Other algorithms'
// rows are ignored.
inline bound_summary bound_report(const std::vector<bench_record>& rows) {
    bound_summary s;
    for (const auto& r : rows) {
        if (r.algo == algo_kind::rand) {
            const double denom =
                static_cast<double>(r.n) * std::log(static_cast<double>(r.n)) +
                static_cast<double>(r.w) + 1.0;
            const double ratio = static_cast<double>(r.probes) / denom;
            ++s.rand_rows;
            if (ratio > s.rand_max_ratio) s.rand_max_ratio = ratio;
        } else if (r.algo == algo_kind::det) {
            const double denom =
                static_cast<double>(r.n) * (static_cast<double>(r.w) + 2.0);
            const double ratio = static_cast<double>(r.probes) / denom;
            ++s.det_rows;
            if (ratio > s.det_max_ratio) s.det_max_ratio = ratio;
        }
    }
    s.rand_ok = s.rand_rows == 0 || s.rand_max_ratio <= s.rand_threshold;
    s.det_ok = s.det_rows == 0 || s.det_max_ratio <= s.det_threshold;
    return s;
}

inline std::string format_bound_report(const bound_summary& s) {
    std::string out;
    if (s.rand_rows == 0) {
        out += "rand: no rows\n";
    } else {
        out += "rand: rows " + std::to_string(s.rand_rows) +
               " max probes/(n ln n + w + 1) = " + std::to_string(s.rand_max_ratio) +
               " threshold " + std::to_string(s.rand_threshold) +
               (s.rand_ok ? " ok" : " REGRESSION") + "\n";
    }
    if (s.det_rows == 0) {
        out += "det: no rows\n";
    } else {
        out += "det: rows " + std::to_string(s.det_rows) +
               " max probes/(n(w+2)) = " + std::to_string(s.det_max_ratio) +
               " threshold " + std::to_string(s.det_threshold) +
               (s.det_ok ? " ok" : " REGRESSION") + "\n";
    }
    return out;
}

}  // namespace probesort
