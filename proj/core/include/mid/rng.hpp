#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace mid {

// Deterministic, portable RNG: xoshiro256++ seeded through splitmix64.
// std::<distribution> types are implementation-defined, so all draws
// (uniforms, normals, shuffles) are produced here to keep every seeded
// result bit-identical across platforms and toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform01();

    // Uniform on [lo, hi).
    double uniform(double lo, double hi);

    // Unbiased integer in [0, n); n >= 1.
    std::uint64_t below(std::uint64_t n);

    // Standard normal via Box-Muller (second draw cached).
    double normal();

    // In-place Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // m distinct values from {1, ..., d}, uniformly, in draw order.
    std::vector<long> sample_distinct(long d, long m);

private:
    std::array<std::uint64_t, 4> s_{};
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// One splitmix64 step; advances state.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic substream seed from a base seed and up to three stream labels.
// Used to give every (cell, replicate) / (interval, permutation) its own stream.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0);

}  // namespace mid
