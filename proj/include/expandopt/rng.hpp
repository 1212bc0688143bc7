#pragma once

#include <cstdint>
#include <vector>

namespace expandopt {

/// SplitMix64 (Steele, Lea & Flood 2014). Chosen for bit-exact reproducibility
/// across platforms: the whole sampling path is integer-only.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Unbiased draw from [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Fisher-Yates shuffle of 0..n-1 into out.
    void permutation(int n, std::vector<int>& out) {
        out.resize(n);
        for (int i = 0; i < n; ++i) out[i] = i;
        for (int i = n - 1; i > 0; --i) {
            int j = static_cast<int>(next_below(static_cast<std::uint64_t>(i) + 1));
            std::swap(out[i], out[j]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace expandopt
