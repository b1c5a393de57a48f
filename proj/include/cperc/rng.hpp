#pragma once

#include <cstdint>

#include "cperc/errors.hpp"

namespace cperc {

// SplitMix64 step. Seeding primitive and per-index seed derivation; all
// generation in this project bottoms out here so outputs are identical on
// every platform.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Independent substream seed for (master, index). Two rounds decorrelate
// consecutive indices.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (index * 0xD1342543DE82EF95ull + 0x2545F4914F6CDD1Dull);
    splitmix64(s);
    splitmix64(s);
    return s;
}

// xoshiro256** 1.0.
class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) w = splitmix64(s);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0, n) by rejection; no modulo bias, platform independent.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t threshold = (-n) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // Geometric on {0,1,2,...} with success probability 1/denom, sampled by
    // exact Bernoulli trials. Refuses rates too small to sample this way.
    std::int64_t geometric_inv(std::uint64_t denom) {
        if (denom == 0) throw DomainError("geometric_inv: zero denominator");
        if (denom == 1) return 0;
        if (denom > (1ull << 20)) {
            throw InfeasibleError("geometric_inv: success rate below 2^-20, trial sampling refused");
        }
        std::int64_t failures = 0;
        while (bounded(denom) != 0) ++failures;
        return failures;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

}  // namespace cperc
