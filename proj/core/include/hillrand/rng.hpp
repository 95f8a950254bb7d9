#pragma once

#include <cstdint>

namespace hillrand {

// Deterministic, platform-independent random streams.
//
// Core generator: xoshiro256++ (Blackman & Vigna). Substreams are derived by
// keying a SplitMix64 sequence with (seed, stream id), one substream per
// Monte Carlo trial/trajectory, so parallel runs reduce to the same numbers
// regardless of thread scheduling.

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t s) : state(s) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

class RandomStream {
public:
    /// Stream `stream_id` of the family identified by `seed`.
    RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0) {
        SplitMix64 key(seed);
        std::uint64_t k = key.next() ^ (stream_id * 0xD2B74407B1CE6E93ull + 0x8BB84B93962EACC9ull);
        SplitMix64 init(k);
        for (auto& w : s_) w = init.next();
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    static RandomStream substream(std::uint64_t seed, std::uint64_t stream_id) {
        return RandomStream(seed, stream_id);
    }

    std::uint64_t next_u64() {
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

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [a, b).
    double uniform(double a, double b) {
        return a + (b - a) * uniform01();
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

} // namespace hillrand
