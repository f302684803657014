#pragma once

#include <array>
#include <cstdint>

namespace segscore {

// splitmix64; used for seeding and for deriving per-replicate streams.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

// xoshiro256** (Blackman & Vigna), state seeded through splitmix64.
class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : state_) word = sm.next();
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

    // uniform in [0,1) with 53 random bits; platform-independent
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

// Stream derivation rule: replicate i draws from a generator seeded by
// splitmix64 evaluated at master + (i+1) * golden-gamma. A pure function
// of (master, i), so any parallel schedule reproduces the same streams.
inline std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t replicate_index) {
    SplitMix64 sm(master_seed + (replicate_index + 1) * 0x9E3779B97F4A7C15ULL);
    return sm.next();
}

inline constexpr const char* kRngName = "xoshiro256**";
inline constexpr const char* kStreamRule =
    "seed_i = splitmix64(master + (i+1)*0x9E3779B97F4A7C15)";

}  // namespace segscore
