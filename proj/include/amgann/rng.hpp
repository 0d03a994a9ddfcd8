#ifndef AMGANN_RNG_HPP
#define AMGANN_RNG_HPP

/// @file rng.hpp
/// @brief Self-contained deterministic random number generator.
///
/// The standard library's distributions (std::normal_distribution, std::shuffle)
/// are implementation-defined, so seeded runs would not be reproducible across
/// toolchains.  Everything random in this project draws from this generator:
/// a SplitMix64 core plus explicit Box-Muller sampling and Fisher-Yates shuffling.

#include <cmath>
#include <cstdint>
#include <vector>

#include "amgann/core.hpp"

namespace amgann {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// SplitMix64 step (Steele, Lea, Flood 2014).
    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    real_t next_unit() {
        return static_cast<real_t>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n) by rejection (unbiased, deterministic).
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) throw DimensionError("Rng::next_below: n must be positive");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do { x = next_u64(); } while (x >= limit);
        return x % n;
    }

    /// Standard normal via Box-Muller; the second value of each pair is cached.
    real_t next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        real_t u1, u2;
        do { u1 = next_unit(); } while (u1 <= 0.0);
        u2 = next_unit();
        const real_t r = std::sqrt(-2.0 * std::log(u1));
        const real_t a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    /// In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    real_t spare_ = 0.0;
};

} // namespace amgann

#endif // AMGANN_RNG_HPP
