#pragma once

#include <cstdint>
#include <string_view>

namespace streval {

/// SplitMix64: small, fast, splittable, and byte-stable across platforms,
/// which keeps generated corpora reproducible. Distribution quality is
/// ample for corpus shaping.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound); bound must be positive. Modulo bias is
    /// negligible for the small bounds used here.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    /// Uniform in [lo, hi] inclusive.
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
        return lo + below(hi - lo + 1);
    }

    /// Bernoulli draw with the given probability.
    bool chance(double probability) {
        if (probability <= 0.0)
            return false;
        if (probability >= 1.0)
            return true;
        return unit() < probability;
    }

    /// Uniform double in [0, 1).
    double unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Derives an independent child seed; used to split the master seed
    /// per sample and per category.
    std::uint64_t split(std::uint64_t salt) {
        SplitMix64 child(state_ ^ (salt * 0xD2B74407B1CE6E93ULL + 0x9E3779B97F4A7C15ULL));
        return child.next();
    }

    static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
        SplitMix64 g(seed ^ (salt * 0xA24BAED4963EE407ULL + 0x9FB21C651E98DF25ULL));
        return g.next();
    }

    /// Stable 64-bit content hash (FNV-1a); used for cassette keys.
    static std::uint64_t hash(std::string_view text) {
        std::uint64_t h = 0xCBF29CE484222325ULL;
        for (unsigned char c : text) {
            h ^= c;
            h *= 0x100000001B3ULL;
        }
        return h;
    }

private:
    std::uint64_t state_;
};

} // namespace streval
