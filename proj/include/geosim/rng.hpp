#pragma once

#include <cstdint>

namespace geosim {

// SplitMix64 (Steele/Lea/Flood). Chosen over std:: engines because its
// output is fully specified: identical seeds give identical streams on
// every platform, which the reproducibility contract depends on. Streams
// for sub-tasks are derived with derive(), never by sharing a generator.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 mantissa bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform double in [lo, hi).
    double next_double(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform integer in [0, n), n > 0. Rejection keeps it exactly uniform.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

private:
    std::uint64_t state_;
};

// Stateless seed mixer for deriving independent streams from a master
// seed plus integer tags (e.g. node count, trial index).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
    SplitMix64 g(seed ^ (tag * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
    return g.next_u64();
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag1, std::uint64_t tag2) {
    return mix_seed(mix_seed(seed, tag1), tag2);
}

} // namespace geosim
