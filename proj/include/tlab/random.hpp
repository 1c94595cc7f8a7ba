#ifndef TLAB_RANDOM_HPP
#define TLAB_RANDOM_HPP

#include <cstdint>

namespace tlab {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// Counter-based generator: the n-th output is splitmix_mix(seed + (n+1)*kGolden).
/// Only integer arithmetic, so streams are identical on every platform.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t operator()() {
        state_ += kGolden;
        return splitmix_mix(state_);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) {
        if (p >= 1.0) return true;
        if (p <= 0.0) return false;
        return uniform() < p;
    }

    /// Unbiased integer in [0, bound) by rejection (Lemire).
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>((*this)()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::uint64_t state_;
};

/// Seed for stream (a, b) under a master seed; independent of evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return splitmix_mix(splitmix_mix(master + (a + 1) * kGolden) + (b + 1) * kGolden);
}

}  // namespace tlab

#endif  // TLAB_RANDOM_HPP
