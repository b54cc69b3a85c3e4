#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace uavplan::rng {

/// SplitMix64 finalizer. Used to derive well-spread child seeds.
inline std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Deterministic child seed for (master seed, restart attempt, generation).
/// Every stochastic stage of a run draws from its own stream so results do
/// not depend on evaluation order or parallelism.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t attempt,
                                 std::uint64_t generation) noexcept {
    return mix64(mix64(mix64(master) + attempt) + generation);
}

/// Seeded random stream with draw primitives that are identical on every
/// platform (the standard mt19937_64 output sequence plus fixed conversions;
/// no implementation-defined distributions).
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double canonical() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). Unbiased (multiply-shift with rejection).
    std::uint64_t bounded(std::uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform random permutation of {0, ..., n-1} (Fisher-Yates).
    std::vector<int> permutation(int n) {
        std::vector<int> p(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
        for (int i = n - 1; i > 0; --i) {
            const auto j = static_cast<int>(bounded(static_cast<std::uint64_t>(i) + 1));
            std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
        }
        return p;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace uavplan::rng
