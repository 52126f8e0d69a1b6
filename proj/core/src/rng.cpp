#include "mid/rng.hpp"

#include <cmath>
#include <numbers>

namespace mid {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    // Chain each label through splitmix64 so that streams differing in any
    // single label are uncorrelated.
    std::uint64_t s = base;
    (void)splitmix64(s);
    s ^= 0x9e3779b97f4a7c15ULL + a;
    (void)splitmix64(s);
    s ^= 0xc2b2ae3d27d4eb4fULL + b;
    (void)splitmix64(s);
    s ^= 0x165667b19e3779f9ULL + c;
    return splitmix64(s);
}

Rng::Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
}

static inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

std::uint64_t Rng::next_u64() {
    // xoshiro256++
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
}

std::uint64_t Rng::below(std::uint64_t n) {
    // Modulo with rejection of the biased tail.
    std::uint64_t x, r;
    do {
        x = next_u64();
        r = x % n;
    } while (x - r > std::uint64_t(0) - n);
    return r;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u;
    do {
        u = uniform01();
    } while (u <= 0.0);
    const double r = std::sqrt(-2.0 * std::log(u));
    const double theta = 2.0 * std::numbers::pi * uniform01();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

std::vector<long> Rng::sample_distinct(long d, long m) {
    std::vector<long> pool(static_cast<std::size_t>(d));
    for (long i = 0; i < d; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
    // Partial Fisher-Yates: after m steps the prefix is a uniform m-subset.
    for (long i = 0; i < m; ++i) {
        const long j = i + static_cast<long>(below(static_cast<std::uint64_t>(d - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(m));
    return pool;
}

}  // namespace mid
