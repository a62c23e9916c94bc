// Deterministic random source for sampled checks.  A fixed splitmix64 stream
// plus hand-rolled bounded draws, so identical seeds give identical samples on
// every platform and standard library.
#pragma once

#include <cstdint>
#include <vector>

namespace weaklaw {

class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform draw in [0, n) by rejection; n >= 1.
    uint64_t below(uint64_t n) {
        uint64_t limit = ~uint64_t(0) - (~uint64_t(0) % n);
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    bool coin() { return next() & 1; }

    // Random subset of {0..n-1} as sorted indices.
    std::vector<int32_t> subset(int32_t n) {
        std::vector<int32_t> out;
        for (int32_t i = 0; i < n; ++i)
            if (coin()) out.push_back(i);
        return out;
    }

private:
    uint64_t state_;
};

}  // namespace weaklaw
