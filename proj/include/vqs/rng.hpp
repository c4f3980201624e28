#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace vqs {

// Deterministic pseudo-randomness for the whole toolkit.
//
// Generator: xoshiro256++ (Blackman/Vigna), a 64-bit shift/rotate generator,
// seeded by expanding a single 64-bit seed through the splitmix64 finalizer.
// Subseeds for independent tasks (samples, shots, shards) come from
// derive_subseed(root, index), so parallel and serial schedules draw
// identical streams. Same root seed => bit-identical runs.

constexpr std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_subseed(std::uint64_t root, std::uint64_t index) {
    std::uint64_t s = root;
    std::uint64_t a = splitmix64_next(s);
    s = a ^ (index * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL);
    std::uint64_t b = splitmix64_next(s);
    return b;
}

class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64_next(sm);
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

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Unbiased integer in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0ULL - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Standard normal via Box-Muller; second deviate cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u = uniform01();
        while (u <= 0.0) u = uniform01();
        const double v = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double two_pi_v = 2.0 * 3.14159265358979323846 * v;
        spare_ = r * std::sin(two_pi_v);
        has_spare_ = true;
        return r * std::cos(two_pi_v);
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace vqs
