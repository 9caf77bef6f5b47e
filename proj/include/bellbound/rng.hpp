#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace bellbound {

// SplitMix64 step (Steele, Lea, Flood; the generator behind Java's
// SplittableRandom). Pure 64-bit integer arithmetic, so sequences are
// identical on every platform.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// One deterministic pseudo-random stream. Sub-streams are derived by
// hashing the parent seed with a label path, which makes runs splittable
// per (setting pair, shot block, restart, ...) without coordination.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed) {}

    // Hash-chain a label path onto a base seed.
    static std::uint64_t derive_seed(std::uint64_t base,
                                     std::initializer_list<std::uint64_t> path) {
        std::uint64_t s = base;
        for (std::uint64_t label : path) {
            s ^= label + 0x9E3779B97F4A7C15ull + (s << 6) + (s >> 2);
            std::uint64_t st = s;
            s = splitmix64_next(st);
        }
        return s;
    }

    static RandomStream derived(std::uint64_t base,
                                std::initializer_list<std::uint64_t> path) {
        return RandomStream(derive_seed(base, path));
    }

    std::uint64_t next_u64() { return splitmix64_next(state_); }

    // Uniform double in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform double in (0, 1]; safe under log().
    double next_unit_open() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the paired deviate is cached.
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit_open();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace bellbound
