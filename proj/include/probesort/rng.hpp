#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace probesort {

// All pseudo-randomness in the toolkit is drawn from std::mt19937_64 streams
// (generator identifier "mt19937_64", pinned by the standard, so sequences
// replay across platforms). Substream seeds are derived from one master seed
// with splitmix64; sampling helpers below avoid std::uniform_int_distribution
// and std::shuffle, whose outputs are implementation-defined.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Substream `stream` of `master`. Streams 0,1,2,... are independent for all
// practical purposes and the rule is part of the replay contract.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream + 1));
}

using rng64 = std::mt19937_64;

// Unbiased draw from [0, bound) by rejection.
inline std::uint64_t uniform_below(rng64& gen, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = gen();
        if (x >= threshold) return x % bound;
    }
}

inline std::size_t uniform_index(rng64& gen, std::size_t size) {
    return static_cast<std::size_t>(uniform_below(gen, static_cast<std::uint64_t>(size)));
}

// Fisher-Yates; uniform over all permutations of v.
template <typename T>
void shuffle_vec(std::vector<T>& v, rng64& gen) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = uniform_index(gen, i);
        std::swap(v[i - 1], v[j]);
    }
}

inline std::vector<int> random_permutation(int n, rng64& gen) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    shuffle_vec(perm, gen);
    return perm;
}

}  // namespace probesort
