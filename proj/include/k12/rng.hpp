#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace k12::rng {

// SplitMix64 step; used to spread user seeds and to derive sub-stream keys.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline uint64_t derive(uint64_t seed, uint64_t a) {
    return splitmix64(splitmix64(seed) ^ (a * 0x9E3779B97F4A7C15ULL + 0x165667B19E3779F9ULL));
}

inline uint64_t derive(uint64_t seed, uint64_t a, uint64_t b) {
    return derive(derive(seed, a), b);
}

// Deterministic generator. Wraps std::mt19937_64 (bit-exact across
// platforms by the standard) but never uses std distributions, whose output
// is implementation-defined; all mappings from raw 64-bit draws to values
// are spelled out here so shard bytes match across machines.
class Engine {
public:
    explicit Engine(uint64_t seed) : gen_(splitmix64(seed)) {}

    uint64_t next() { return gen_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Unbiased uniform integer in [0, n). n must be > 0.
    uint64_t uniform_int(uint64_t n) {
        if (n <= 1) return 0;
        const uint64_t rem = (UINT64_MAX % n + 1) % n; // 2^64 mod n
        const uint64_t limit = UINT64_MAX - rem;
        uint64_t r = next();
        while (rem != 0 && r > limit) r = next();
        return r % n;
    }

    // Standard normal via Box-Muller, spare value cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform(); // (0, 1]
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    // Standard normal conditioned on |z| <= lim (rejection sampling).
    double truncated_normal(double lim) {
        double z = normal();
        while (z < -lim || z > lim) z = normal();
        return z;
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace k12::rng
