#pragma once

#include <cstdint>
#include <random>

namespace spinecho {

// mt19937_64 with hand-rolled uniform mapping: std::uniform_real_distribution
// is implementation-defined, and oracle sweeps must replay bit-identically.
struct Rng {
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // index in [0, n)
    std::uint64_t pick(std::uint64_t n) { return eng() % n; }

    std::mt19937_64 eng;
};

}  // namespace spinecho
