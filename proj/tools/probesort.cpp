// Command-line surface: instance generation, single runs, grid benchmarks
// with CSV output, instance/solver verification, and the prefix-maxima
// statistics experiment.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "probesort/bench.hpp"
#include "probesort/core.hpp"
#include "probesort/generators.hpp"
#include "probesort/verify.hpp"

namespace {

using namespace probesort;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path + " for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path);
}

std::vector<algo_kind> parse_algos(const std::vector<std::string>& names) {
    std::vector<algo_kind> out;
    out.reserve(names.size());
    for (const auto& name : names) out.push_back(algo_from_string(name));
    return out;
}

instance load_instance(const std::string& path) {
    auto inst = parse(read_file(path));
    auto report = validate_instance(inst);
    if (!report.ok()) {
        std::string msg = path + " is not a valid instance:";
        if (!report.acyclic) msg += " truth orientation contains a cycle;";
        if (!report.hamiltonian) msg += " truth has no spine covering every vertex;";
        for (const auto& v : report.violations) msg += " " + v + ";";
        throw std::runtime_error(msg);
    }
    return inst;
}

// Solves `inst` with one algorithm over a fresh oracle; returns the path and
// reports the distinct-probe count.
std::vector<int> solve_with(algo_kind kind, const instance& inst,
                            std::uint64_t seed, long long* probes) {
    probe_oracle oracle(inst);
    std::vector<int> path;
    switch (kind) {
        case algo_kind::rand: path = solve_randomized(oracle, seed); break;
        case algo_kind::det: path = solve_deterministic(oracle); break;
        case algo_kind::brute: path = brute_force_solve(oracle); break;
        case algo_kind::combined: {
            randomized_solver a(inst.n, inst.edges, inst.prediction, seed);
            deterministic_solver b(inst.n, inst.edges, inst.prediction);
            path = alternate_combine(a, b, oracle).path;
            break;
        }
    }
    *probes = oracle.probes_used();
    return path;
}

struct cli_options {
    // gen
    gen_spec gen;
    double gen_density = 0.0;
    std::string gen_family = "random";
    std::string gen_out;
    // run
    std::string run_algo_name = "rand";
    std::string run_instance;
    std::uint64_t run_seed = 0;
    // bench
    std::vector<std::string> bench_algos{"rand"};
    std::vector<int> bench_ns{100};
    std::vector<long long> bench_ws{0};
    std::vector<double> bench_densities;
    long long bench_extra = -1;
    std::string bench_family = "random";
    int bench_trials = 1;
    std::uint64_t bench_seed = 0;
    std::string bench_out;
    std::string bench_from;
    bool bench_report = false;
    // verify
    std::string verify_instance;
    std::vector<std::string> verify_algos{"rand", "det", "combined"};
    std::uint64_t verify_seed = 0;
    // lemma-rand
    int lemma_n = 100;
    long long lemma_trials = 100000;
    std::uint64_t lemma_seed = 0;
    std::string lemma_format = "text";
};

int cmd_gen(cli_options& opt, bool density_given) {
    opt.gen.family = family_from_string(opt.gen_family);
    if (density_given) opt.gen.density = opt.gen_density;
    auto inst = generate(opt.gen);
    std::string text = generation_banner(opt.gen, static_cast<long long>(inst.edges.size())) +
                       serialize(inst);
    if (opt.gen_out.empty())
        std::cout << text;
    else
        write_file(opt.gen_out, text);
    return 0;
}

int cmd_run(cli_options& opt) {
    auto kind = algo_from_string(opt.run_algo_name);
    auto inst = load_instance(opt.run_instance);
    auto rec = run_algo(kind, inst, opt.run_seed);
    if (!rec.correct)
        throw std::runtime_error("solver returned a wrong order on " + opt.run_instance);
    std::cout << csv_version_comment << '\n' << csv_header << '\n' << to_csv_row(rec) << '\n';
    return 0;
}

int cmd_bench(cli_options& opt) {
    if (!opt.bench_from.empty()) {
        auto rows = parse_csv(read_file(opt.bench_from));
        std::cout << format_bound_report(bound_report(rows));
        return 0;
    }
    grid_spec grid;
    grid.algos = parse_algos(opt.bench_algos);
    grid.ns = opt.bench_ns;
    grid.ws = opt.bench_ws;
    grid.densities = opt.bench_densities;
    grid.extra = opt.bench_extra;
    grid.family = family_from_string(opt.bench_family);
    grid.trials = opt.bench_trials;
    grid.seed = opt.bench_seed;
    auto rows = run_grid(grid);
    if (opt.bench_out.empty()) {
        std::ostringstream buf;
        write_csv(buf, rows);
        std::cout << buf.str();
        if (opt.bench_report) std::cerr << format_bound_report(bound_report(rows));
    } else {
        std::ostringstream buf;
        write_csv(buf, rows);
        write_file(opt.bench_out, buf.str());
        if (opt.bench_report) std::cout << format_bound_report(bound_report(rows));
    }
    return 0;
}

int cmd_verify(cli_options& opt) {
    auto inst = load_instance(opt.verify_instance);
    std::cout << "instance ok: n=" << inst.n << " m=" << inst.edges.size()
              << " w=" << mispredicted_count(inst) << '\n';
    probe_oracle brute_oracle(inst);
    auto reference = brute_force_solve(brute_oracle);
    std::cout << "brute: " << brute_oracle.probes_used() << " probes\n";
    int rc = 0;
    for (const auto& name : opt.verify_algos) {
        auto kind = algo_from_string(name);
        long long probes = 0;
        auto path = solve_with(kind, inst, opt.verify_seed, &probes);
        if (path == reference && check_path(inst, path)) {
            std::cout << name << ": path matches brute force (" << probes << " probes)\n";
        } else {
            std::cout << name << ": MISMATCH against brute force\n";
            rc = 1;
        }
    }
    return rc;
}

int cmd_lemma_rand(cli_options& opt) {
    auto rep = lemma_rand_check(opt.lemma_n, opt.lemma_trials, opt.lemma_seed);
    if (opt.lemma_format == "csv") {
        std::cout << "n,trials,mean,expected_mean,max_observed,threshold,exceed_count,exceed_fraction\n"
                  << rep.n << ',' << rep.trials << ',' << rep.mean << ','
                  << rep.expected_mean << ',' << rep.max_observed << ','
                  << rep.threshold << ',' << rep.exceed_count << ','
                  << rep.exceed_fraction << '\n';
    } else {
        std::cout << format_report(rep);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"toolkit for sorting with a probe oracle and a predicted orientation"};
    app.require_subcommand(1);
    cli_options opt;
    int rc = 0;

    auto* gen = app.add_subcommand("gen", "generate an instance file");
    gen->add_option("--n", opt.gen.n, "number of keys")->required()->check(CLI::Range(1, 1 << 26));
    gen->add_option("--extra", opt.gen.extra_edges, "chord edges beyond the spine");
    auto* density_opt =
        gen->add_option("--density", opt.gen_density, "fraction of possible chords (overrides --extra)")
            ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--w", opt.gen.w, "number of mispredicted edges");
    gen->add_option("--family", opt.gen_family, "instance family: random|complete|path_chords|flipped_backbone")
        ->capture_default_str();
    gen->add_option("--seed", opt.gen.seed, "generator seed")->envname("PROBESORT_SEED");
    gen->add_option("--out", opt.gen_out, "output file (stdout when omitted)");
    gen->callback([&] { rc = cmd_gen(opt, density_opt->count() > 0); });

    auto* run = app.add_subcommand("run", "run one algorithm on one instance file");
    run->add_option("--algo", opt.run_algo_name, "rand|det|brute|combined")->required();
    run->add_option("--instance", opt.run_instance, "instance file")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("--seed", opt.run_seed, "solver seed")->envname("PROBESORT_SEED");
    run->callback([&] { rc = cmd_run(opt); });

    auto* bench = app.add_subcommand("bench", "sweep a grid of instances and emit CSV");
    bench->add_option("--algo", opt.bench_algos, "comma list of rand|det|brute|combined")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--n", opt.bench_ns, "comma list of sizes")->delimiter(',');
    bench->add_option("--w", opt.bench_ws, "comma list of misprediction counts")->delimiter(',');
    bench->add_option("--density", opt.bench_densities, "comma list of chord densities")
        ->delimiter(',');
    bench->add_option("--extra", opt.bench_extra, "chords per instance (default 3n)");
    bench->add_option("--family", opt.bench_family, "instance family")->capture_default_str();
    bench->add_option("--trials", opt.bench_trials, "trials per grid cell")
        ->check(CLI::PositiveNumber);
    bench->add_option("--seed", opt.bench_seed, "master seed")->envname("PROBESORT_SEED");
    bench->add_option("--out", opt.bench_out, "CSV output file (stdout when omitted)");
    bench->add_option("--from", opt.bench_from, "report on an existing CSV instead of running")
        ->check(CLI::ExistingFile);
    bench->add_flag("--report", opt.bench_report, "also print the probe-budget ratio report");
    bench->callback([&] { rc = cmd_bench(opt); });

    auto* verify = app.add_subcommand("verify", "validate an instance and cross-check solvers");
    verify->add_option("--instance", opt.verify_instance, "instance file")
        ->required()
        ->check(CLI::ExistingFile);
    verify->add_option("--algo", opt.verify_algos, "solvers to cross-check against brute force")
        ->delimiter(',')
        ->capture_default_str();
    verify->add_option("--seed", opt.verify_seed, "solver seed")->envname("PROBESORT_SEED");
    verify->callback([&] { rc = cmd_verify(opt); });

    auto* lemma = app.add_subcommand("lemma-rand", "prefix-maxima statistics of random permutations");
    lemma->add_option("--n", opt.lemma_n, "permutation length")->check(CLI::PositiveNumber);
    lemma->add_option("--trials", opt.lemma_trials, "number of sampled permutations")
        ->check(CLI::PositiveNumber);
    lemma->add_option("--seed", opt.lemma_seed, "sampling seed")->envname("PROBESORT_SEED");
    lemma->add_option("--format", opt.lemma_format, "text|csv")->capture_default_str();
    lemma->callback([&] { rc = cmd_lemma_rand(opt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "probesort: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
