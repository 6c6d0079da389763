#pragma once

#include <cmath>
#include <cstdint>

namespace maqd {

// splitmix64 finalizer (Steele, Lea & Flood; Vigna's public-domain constants).
// Used both to expand seeds into generator state and to derive child streams.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic random stream: xoshiro256++ core with keyed forking.
// fork(key) derives an independent child purely from (current state, key),
// so a stream for offspring i of iteration k can be addressed as
// root.fork(k).fork(i) without any sequential coupling between siblings.
// All floating-point draws are computed from raw bits with fixed formulas,
// so sequences are identical across platforms with IEEE doubles.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) {
            word = mix64(x);
            x = word;
        }
    }

    std::uint64_t next_u64() {
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

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via Box-Muller; consumes exactly two uniforms per draw.
    double normal() {
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    // Uniform integer in [0, n), rejection-sampled to avoid modulo bias.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Child stream keyed by `key`; does not advance this stream.
    RngStream fork(std::uint64_t key) const {
        std::uint64_t h = mix64(key);
        h = mix64(h ^ state_[0]);
        h = mix64(h ^ state_[1]);
        h = mix64(h ^ state_[2]);
        h = mix64(h ^ state_[3]);
        return RngStream(h);
    }

private:
    static constexpr double two_pi = 6.283185307179586476925286766559;

    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace maqd
