#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace actionability {

/// Deterministic RNG wrapper. mt19937_64 output is fixed by the standard;
/// the distribution helpers here avoid std::uniform_*_distribution, whose
/// output is implementation-defined, so seeded runs are reproducible
/// byte-for-byte across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform in [0, n). Modulo reduction; the bias is negligible for the
    /// corpus-sized n used here and determinism is what matters.
    std::uint64_t below(std::uint64_t n) { return n ? gen_() % n : 0; }

    /// Uniform double in [0, 1).
    double real() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Fisher-Yates in place.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

/// Stable seed derivation so sub-tasks (per-domain shuffles, folds, ...)
/// get decorrelated but reproducible streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
    std::uint64_t h = 1469598103934665603ull ^ seed;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 1099511628211ull;
    }
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return h;
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t h = seed ^ (salt + 0x9e3779b97f4a7c15ull);
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    h *= 0xc4ceb9fe1a85ec53ull;
    h ^= h >> 33;
    return h;
}

}  // namespace actionability
