#pragma once

#include <cstdint>
#include <cmath>

namespace qpack {

// Seeded deterministic generator (splitmix64 update).  Used instead of the
// std:: distributions so that identical seeds reproduce identical streams
// bit-for-bit regardless of standard library version.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0,1) with 53-bit mantissa.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0,1]; safe as a log argument.
    double next_double_open() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the second value of each pair is cached.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_double_open();
        const double u2 = next_double();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    // Derived stream for a shard/sample index.  Every per-index computation
    // seeds its own generator this way, so any parallel schedule produces the
    // same numbers.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 g(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
        return g.next();
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace qpack
