#pragma once

#include <cstdint>
#include <random>

namespace crn {

// Seeded generator with portable output: mt19937_64 is specified bit-exactly
// and the uniform mapping avoids std::uniform_real_distribution, whose
// sequence is implementation-defined.
struct Rng {
    std::mt19937_64 gen;

    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double unit() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }  // [0, 1)

    double uniform(double lo, double hi) { return lo + unit() * (hi - lo); }

    std::uint64_t below(std::uint64_t n) { return gen() % n; }
};

}  // namespace crn
