#pragma once

#include <cstdint>
#include <random>

namespace fol {

// Every stochastic routine takes the generator explicitly so that runs are
// reproducible from a single seed.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). Lemire's multiply-shift with rejection.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
    std::uint64_t x = rng();
    __uint128_t prod = static_cast<__uint128_t>(x) * n;
    auto low = static_cast<std::uint64_t>(prod);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            x = rng();
            prod = static_cast<__uint128_t>(x) * n;
            low = static_cast<std::uint64_t>(prod);
        }
    }
    return static_cast<std::uint64_t>(prod >> 64);
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

// splitmix64 finalizer; derives independent stream seeds (per trial, per seed)
// so that parallel loops give the same answer as serial ones.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline Rng stream_rng(std::uint64_t base, std::uint64_t stream) {
    return Rng(mix_seed(base, stream));
}

}  // namespace fol
