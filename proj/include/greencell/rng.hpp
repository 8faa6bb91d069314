#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace greencell {

// splitmix64 finalizer; the core mixing primitive for seed derivation and
// for the stream generator itself. Stable across platforms, unlike the
// standard-library distributions.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ull;
    }
    return h;
}

// Every random stream in a run is derived from the single root seed by
// hashing a subsystem name plus up to two indices. Identical derivations
// across scenario arms give paired realizations.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::string_view name,
                                    std::uint64_t i0 = 0, std::uint64_t i1 = 0) {
    std::uint64_t s = mix64(root ^ fnv1a64(name));
    s = mix64(s ^ i0);
    s = mix64(s ^ i1);
    return s;
}

class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // Uniform integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n) {
        return n == 0 ? 0 : next_u64() % n;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    double exponential(double mean) {
        double u = uniform01();
        return -mean * std::log1p(-u);
    }

    // Knuth's product method, chunked so large means cannot underflow.
    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        int count = 0;
        while (mean > 0.0) {
            double chunk = mean > 30.0 ? 30.0 : mean;
            mean -= chunk;
            double limit = std::exp(-chunk);
            double prod = uniform01();
            while (prod > limit) {
                ++count;
                prod *= uniform01();
            }
        }
        return count;
    }

private:
    std::uint64_t state_;
};

// One-shot Bernoulli keyed by entity and period, so the outcome does not
// depend on evaluation order.
inline bool hash_coin(std::uint64_t root, std::string_view name, std::uint64_t i0,
                      std::uint64_t i1, double p) {
    RngStream s(derive_seed(root, name, i0, i1));
    return s.bernoulli(p);
}

}  // namespace greencell
