#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <probesort/core.hpp>
#include <probesort/rng.hpp>

namespace probesort {

/// Instance families:
///   random           backbone of the hidden order plus uniformly sampled chords
///   complete         every vertex pair is an edge (extra_edges ignored)
///   path_chords      chords only between vertices at hidden-order distance 2..8,
///                    so mistakes stay local to the path
///   flipped_backbone every backbone edge predicted backward (w = n-1), chords
///                    predicted correctly; stresses cycle handling and makes
///                    every trusted in-neighborhood initially wrong
enum class gen_family {
    random,
    complete,
    path_chords,
    flipped_backbone,
};

inline std::string to_string(gen_family f) {
    switch (f) {
        case gen_family::random: return "random";
        case gen_family::complete: return "complete";
        case gen_family::path_chords: return "path_chords";
        case gen_family::flipped_backbone: return "flipped_backbone";
    }
    return "?";
}

inline gen_family family_from_string(const std::string& s) {
    if (s == "random") return gen_family::random;
    if (s == "complete") return gen_family::complete;
    if (s == "path_chords") return gen_family::path_chords;
    if (s == "flipped_backbone") return gen_family::flipped_backbone;
    throw std::invalid_argument("unknown family \"" + s +
                                "\" (expected random, complete, path_chords or flipped_backbone)");
}

struct gen_spec {
    int n = 2;
    long long extra_edges = 0;            // chords beyond the n-1 backbone edges
    std::optional<double> density;        // alternative to extra_edges: fraction of
                                          // the possible chords, in (0, 1]
    int w = 0;                            // exact number of mispredicted edges
                                          // (ignored by flipped_backbone: w = n-1)
    std::uint64_t seed = 0;
    gen_family family = gen_family::random;
};

namespace detail {

inline long long max_chords(int n) {
    return static_cast<long long>(n) * (n - 1) / 2 - (n - 1);
}

/// First `count` elements of a uniformly random `count`-subset of `pool`
/// (partial Fisher-Yates; order of the rest is unspecified).
template <typename T>
std::vector<T> sample_without_replacement(std::vector<T> pool, long long count, rng64& gen) {
    PROBESORT_CHECK(count <= static_cast<long long>(pool.size()), "sample larger than pool");
    for (long long i = 0; i < count; ++i) {
        const auto j = static_cast<std::size_t>(i) +
                       static_cast<std::size_t>(uniform_below(gen, pool.size() - static_cast<std::size_t>(i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    }
    pool.resize(static_cast<std::size_t>(count));
    return pool;
}

}  // namespace detail

/// Builds an instance around a uniformly random hidden vertex order. The
/// backbone (consecutive pairs of the hidden order) is always present so a
/// directed Hamiltonian path exists by construction; truth orients every edge
/// along the order; the prediction disagrees on exactly w edges. Same spec
/// (including seed) reproduces the identical instance.
inline instance generate(const gen_spec& spec) {
    const int n = spec.n;
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (spec.family == gen_family::flipped_backbone && n < 2)
        throw std::invalid_argument("flipped_backbone needs n >= 2");

    rng64 perm_gen(derive_seed(spec.seed, 0));
    rng64 chord_gen(derive_seed(spec.seed, 1));
    rng64 flip_gen(derive_seed(spec.seed, 2));

    const std::vector<int> perm = random_permutation(n, perm_gen);
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;

    long long extra = spec.extra_edges;
    if (spec.density) {
        if (*spec.density <= 0.0 || *spec.density > 1.0)
            throw std::invalid_argument("density must lie in (0, 1]");
        extra = static_cast<long long>(*spec.density * static_cast<double>(detail::max_chords(n)) + 0.5);
    }
    if (extra < 0) throw std::invalid_argument("extra_edges must be nonnegative");

    std::vector<edge_key> edges;
    for (int i = 0; i + 1 < n; ++i)
        edges.push_back(make_edge(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(i + 1)]));

    switch (spec.family) {
        case gen_family::complete: {
            edges.clear();
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
            break;
        }
        case gen_family::random:
        case gen_family::flipped_backbone: {
            const long long cap = detail::max_chords(n);
            if (extra > cap)
                throw std::invalid_argument("extra_edges exceeds the number of possible chords");
            if (cap > (1ll << 22) && extra * 4 <= cap) {
                // Sparse sample from a huge universe: rejection is cheap and
                // avoids materializing ~n^2/2 candidate chords.
                std::set<edge_key> chosen;
                while (static_cast<long long>(chosen.size()) < extra) {
                    const int u = static_cast<int>(uniform_below(chord_gen, static_cast<std::uint64_t>(n)));
                    const int v = static_cast<int>(uniform_below(chord_gen, static_cast<std::uint64_t>(n)));
                    if (u == v) continue;
                    const int d = pos[static_cast<std::size_t>(u)] - pos[static_cast<std::size_t>(v)];
                    if (d == 1 || d == -1) continue;
                    chosen.insert(make_edge(u, v));
                }
                edges.insert(edges.end(), chosen.begin(), chosen.end());
                break;
            }
            std::vector<edge_key> pool;
            pool.reserve(static_cast<std::size_t>(cap));
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) {
                    const int du = pos[static_cast<std::size_t>(u)];
                    const int dv = pos[static_cast<std::size_t>(v)];
                    if (du - dv != 1 && dv - du != 1) pool.push_back({u, v});
                }
            for (const edge_key& e : detail::sample_without_replacement(std::move(pool), extra, chord_gen))
                edges.push_back(e);
            break;
        }
        case gen_family::path_chords: {
            std::vector<edge_key> pool;
            const int max_dist = n - 1 < 8 ? n - 1 : 8;
            for (int d = 2; d <= max_dist; ++d)
                for (int i = 0; i + d < n; ++i)
                    pool.push_back(make_edge(perm[static_cast<std::size_t>(i)],
                                             perm[static_cast<std::size_t>(i + d)]));
            if (extra > static_cast<long long>(pool.size()))
                throw std::invalid_argument(
                    "path_chords supports at most " + std::to_string(pool.size()) +
                    " chords for n=" + std::to_string(n));
            for (const edge_key& e : detail::sample_without_replacement(std::move(pool), extra, chord_gen))
                edges.push_back(e);
            break;
        }
    }

    orientation truth;
    truth.reserve(edges.size());
    for (const edge_key& e : edges)
        truth.push_back(pos[static_cast<std::size_t>(e.lo)] < pos[static_cast<std::size_t>(e.hi)]
                            ? edge_dir::lo_to_hi
                            : edge_dir::hi_to_lo);
    orientation prediction = truth;

    int expected_w = spec.w;
    if (spec.family == gen_family::flipped_backbone) {
        // Exactly the backbone is wrong; chords stay, so every chord
        // certificate the solvers build remains trustworthy.
        for (int i = 0; i + 1 < n; ++i)
            prediction[static_cast<std::size_t>(i)] = flip(prediction[static_cast<std::size_t>(i)]);
        expected_w = n - 1;
    } else {
        const auto m = static_cast<long long>(edges.size());
        if (spec.w < 0 || spec.w > m)
            throw std::invalid_argument("w must lie in [0, m] (m=" + std::to_string(m) + ")");
        std::vector<int> ids(edges.size());
        for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
        for (int id : detail::sample_without_replacement(std::move(ids), spec.w, flip_gen))
            prediction[static_cast<std::size_t>(id)] = flip(prediction[static_cast<std::size_t>(id)]);
    }

    instance inst = make_instance(n, std::move(edges), std::move(truth), std::move(prediction));
    PROBESORT_CHECK(validate_instance(inst).ok(), "generated instance failed validation");
    PROBESORT_CHECK(mispredicted_count(inst) == expected_w,
                    "generated instance has the wrong misprediction count");
    return inst;
}

/// Adversarial family: every backbone edge predicted backward (w = n-1) plus
/// random correctly-predicted chords.
inline instance flipped_backbone(int n, std::uint64_t seed) {
    gen_spec spec;
    spec.n = n;
    spec.family = gen_family::flipped_backbone;
    spec.seed = seed;
    const long long cap = detail::max_chords(n);
    spec.extra_edges = 2ll * n < cap ? 2ll * n : cap;
    return generate(spec);
}

/// Reproducibility banner written into generated instance files; the reader
/// skips it as comments.
inline std::string generation_banner(const gen_spec& spec, long long m) {
    std::ostringstream os;
    os << "# family " << to_string(spec.family) << " n " << spec.n << " m " << m << " w "
       << (spec.family == gen_family::flipped_backbone ? spec.n - 1 : spec.w) << "\n"
       << "# rng mt19937_64 seed " << spec.seed << "\n";
    return os.str();
}

}  // namespace probesort
