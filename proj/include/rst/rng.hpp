#pragma once

#include <cmath>
#include <cstdint>

namespace rst {

// Self-contained generators so that sampled point sets are reproducible
// bit-for-bit across platforms and standard-library versions.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent stream seed from (seed, salt).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t s = seed ^ (0x6a09e667f3bcc909ULL + salt * 0x9e3779b97f4a7c15ULL);
    std::uint64_t z = splitmix64(s);
    return z ^ splitmix64(s);
}

/// xoshiro256++ (Blackman & Vigna), seeded via splitmix64.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1].
    double uniform01_pos() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard exponential variate.
    double exponential() { return -std::log(uniform01_pos()); }

    /// Standard normal via Box-Muller (used only by test oracles).
    double normal() {
        const double u = uniform01_pos();
        const double v = uniform01();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(two_pi_ * v);
    }

  private:
    static constexpr double two_pi_ = 6.283185307179586476925286766559;
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

/// Poisson(mean) count via unit-rate arrival times; O(mean) draws.
inline long poisson_count(double mean, Rng& rng) {
    long n = 0;
    double t = rng.exponential();
    while (t <= mean) {
        ++n;
        t += rng.exponential();
    }
    return n;
}

}  // namespace rst
