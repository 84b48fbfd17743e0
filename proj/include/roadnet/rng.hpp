#ifndef ROADNET_RNG_HPP
#define ROADNET_RNG_HPP

#include <cstdint>
#include <string_view>

namespace roadnet {

// Deterministic, platform-independent randomness. Everything below is pinned:
// the same (seed, counter) pair yields the same draw on every platform, which
// is what makes scenarios and benchmarks reproducible from a single seed.

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Counter-based draw: SplitMix64 evaluated at position `counter` of the
/// stream keyed by `seed`. Draws are independent of evaluation order, so
/// per-edge streams can be filled in parallel.
constexpr std::uint64_t draw_at(std::uint64_t seed, std::uint64_t counter) noexcept {
    return mix64(seed + (counter + 1) * kGoldenGamma);
}

/// Uniform double in [0, 1) from the draw at (seed, counter).
constexpr double unit_at(std::uint64_t seed, std::uint64_t counter) noexcept {
    return static_cast<double>(draw_at(seed, counter) >> 11) * 0x1.0p-53;
}

/// Derives an independent seed for a named sub-stream (FNV-1a over the name,
/// mixed with the master seed).
constexpr std::uint64_t substream(std::uint64_t seed, std::string_view name) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ull;
    }
    return mix64(seed ^ h);
}

/// Sequential SplitMix64 generator for places that want a stateful stream
/// (shuffles, synthetic-city generation).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() noexcept {
        state_ += kGoldenGamma;
        return mix64(state_);
    }

    /// Uniform double in [0, 1).
    double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). Rejection sampling keeps it exactly unbiased.
    std::uint64_t below(std::uint64_t n) noexcept {
        const std::uint64_t overhang = (UINT64_MAX % n + 1) % n;
        const std::uint64_t bound = UINT64_MAX - overhang;
        std::uint64_t r = next();
        while (r > bound) r = next();
        return r % n;
    }

    bool chance(double p) noexcept { return unit() < p; }

private:
    std::uint64_t state_;
};

} // namespace roadnet

#endif // ROADNET_RNG_HPP
