#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bri {

/// Identifier written into run manifests so outputs carry their generator.
inline constexpr const char* kRngAlgorithm = "splitmix64+xoshiro256**";

/// SplitMix64, used to expand seeds into xoshiro state.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// xoshiro256** by Blackman & Vigna; bit-stable across platforms, unlike the
/// standard-library distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 1) { reseed(seed); }

    void reseed(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& s : s_) s = sm.next();
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0,1) from the top 53 bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

    std::uint64_t below(std::uint64_t bound) { return next_u64() % bound; }

    /// Fisher-Yates permutation of {0,..,n-1}.
    std::vector<int> permutation(int n) {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i;
        for (int i = n - 1; i > 0; --i) {
            const int j = static_cast<int>(below(static_cast<std::uint64_t>(i) + 1));
            std::swap(p[i], p[j]);
        }
        return p;
    }

    /// k distinct values from {0,..,n-1}, unsorted.
    std::vector<int> sample_without_replacement(int n, int k) {
        auto p = permutation(n);
        p.resize(k);
        return p;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

inline std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x00000100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a64(std::string_view s) { return fnv1a64(s.data(), s.size()); }

/// Derive an independent stream from (seed, label). Used for per-trial and
/// per-purpose streams so runs are reproducible piecemeal.
inline Rng stream_rng(std::uint64_t seed, std::string_view label) {
    std::uint64_t h = fnv1a64(label);
    h ^= seed + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return Rng(h);
}

inline Rng stream_rng(std::uint64_t seed, std::string_view label, std::uint64_t index) {
    return stream_rng(seed ^ (0xD1B54A32D192ED03ull * (index + 1)), label);
}

}  // namespace bri
