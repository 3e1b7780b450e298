#ifndef HVAC_RNG_HPP
#define HVAC_RNG_HPP

#include <cstdint>

namespace hvac {

/// Deterministic 64-bit generator (splitmix64). Used everywhere instead of
/// the standard distributions so that streams are identical across standard
/// library implementations and independent of sampling order: each Monte
/// Carlo sample derives its own stream from (seed, sample index).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Stream for sample `index` of a run seeded with `seed`.
    static Rng for_sample(std::uint64_t seed, std::uint64_t index) {
        Rng mix(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
        mix.next_u64();
        return mix;
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi].
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    /// Uniform integer in {lo, ..., hi}.
    int uniform_int(int lo, int hi) {
        if (hi <= lo) return lo;
        auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<int>(next_u64() % span);
    }

private:
    std::uint64_t state_;
};

}  // namespace hvac

#endif
