#pragma once

#include <cmath>
#include <cstdint>

namespace pmk {

/// Deterministic PRNG (xoshiro256**) with explicit, platform-independent
/// helpers. std::* distributions are implementation-defined, so everything
/// that must reproduce bit-identically across runs goes through this class.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        // splitmix64 expansion of the seed into the xoshiro state
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9E3779B97F4A7C15ull;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
            word = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() {
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

    /// Uniform integer in [0, n). n must be > 0.
    std::uint32_t below(std::uint32_t n) {
        // Lemire's multiply-shift with rejection for exact uniformity.
        std::uint64_t x = next_u64() >> 32;
        std::uint64_t m = x * n;
        std::uint32_t l = static_cast<std::uint32_t>(m);
        if (l < n) {
            const std::uint32_t floor = (0u - n) % n;
            while (l < floor) {
                x = next_u64() >> 32;
                m = x * n;
                l = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Marsaglia's polar method (no trig, deterministic).
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double k = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * k;
        has_spare_ = true;
        return u * k;
    }

    /// Independent substream derived from this generator's seed material.
    /// Forking with distinct stream ids never aliases the parent sequence.
    Rng fork(std::uint64_t stream) const {
        return Rng(state_[0] ^ (stream * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull));
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4]{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Stable 64-bit mix of several values, used to derive per-cell seeds for
/// sweeps so that (seed, angle, distance, trial) cells are independent of
/// iteration order.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0,
                              std::uint64_t d = 0) {
    auto mix = [](std::uint64_t h, std::uint64_t v) {
        h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        return h;
    };
    std::uint64_t h = 0x243F6A8885A308D3ull;
    h = mix(h, a);
    h = mix(h, b);
    h = mix(h, c);
    h = mix(h, d);
    return h;
}

} // namespace pmk
