#pragma once

// Deterministic randomness. Everything is driven by std::mt19937_64 with an
// explicit 64-bit seed so key files and ciphertexts are reproducible
// bit-for-bit across platforms; std::uniform_int_distribution is avoided on
// purpose (its output is implementation-defined).

#include <cstdint>
#include <random>
#include <stdexcept>

#include "rankcrypt/field.hpp"

namespace rankcrypt {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline Rng seeded_rng(std::uint64_t seed) { return Rng(seed); }

// Independent deterministic substream, e.g. one per ciphertext block.
inline Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed ^ splitmix64(index)));
}

inline std::uint64_t rand_bits(Rng& rng, unsigned bits) {
    if (bits == 0) return 0;
    if (bits >= 64) return rng();
    return rng() & ((std::uint64_t{1} << bits) - 1);
}

// Uniform in [0, bound) by rejection.
inline std::uint64_t rand_below(Rng& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("rand_below: bound must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % bound;
}

inline bool rand_bit(Rng& rng) { return rng() & 1; }

inline FieldElement random_element(const FieldContext& ctx, Rng& rng) {
    return ctx.element(rand_bits(rng, ctx.degree()));
}

inline FieldElement random_nonzero_element(const FieldContext& ctx, Rng& rng) {
    for (;;) {
        FieldElement e = random_element(ctx, rng);
        if (!e.is_zero()) return e;
    }
}

}  // namespace rankcrypt
