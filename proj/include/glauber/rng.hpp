#pragma once

#include <cstdint>
#include <string_view>

namespace glauber {

// Counter-based splittable generator (splitmix64). Output i is a bijective
// mix of seed + i*golden; substreams are derived by hashing a purpose label
// into the seed, so independent uses never share state.
inline constexpr std::string_view kRngAlgorithm = "splitmix64";

inline uint64_t splitmix64_mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed = 0) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return splitmix64_mix(state_);
    }

    // Substream for an independent purpose, reproducible from (seed, label).
    SplitMix64 substream(std::string_view label) const {
        return SplitMix64(state_ ^ fnv1a64(label));
    }
    SplitMix64 substream(std::string_view label, uint64_t index) const {
        return SplitMix64(state_ ^ fnv1a64(label) ^ splitmix64_mix(index + 1));
    }

    // Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform in [0, bound) by rejection; bound > 0.
    uint64_t uniform_below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

  private:
    uint64_t state_;
};

}  // namespace glauber
