// rng.hpp — Counter-based deterministic random generator (splitmix64 finalizer
// in counter mode) with keyed substreams, plus the handful of variates the
// sampling campaigns need. Platform-independent by construction.

#pragma once

#include "qcb/common.hpp"

#include <cstdint>

namespace qcb {

namespace detail {

inline std::uint64_t splitmix64_finalize(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) noexcept {
    return splitmix64_finalize(a + 0x9E3779B97F4A7C15ULL * (b + 1));
}

// FNV-1a, for keying substreams by name.
inline std::uint64_t hash_name(const std::string& s) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace detail

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(detail::mix_key(seed, stream)) {}

    // Derive an independent substream; order of derivation does not matter.
    CounterRng substream(std::uint64_t index) const { return CounterRng(key_, index + 1); }
    CounterRng substream(const std::string& name) const {
        return CounterRng(key_, detail::hash_name(name));
    }

    std::uint64_t next_u64() {
        return detail::splitmix64_finalize(key_ + 0x9E3779B97F4A7C15ULL * ++counter_);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(next_u64() % static_cast<std::uint64_t>(n));
    }

    // Standard normal via Box-Muller; no state cached so streams stay aligned.
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    Complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return Complex(re, im) / std::sqrt(2.0);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace qcb
