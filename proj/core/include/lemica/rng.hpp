#ifndef LEMICA_RNG_HPP
#define LEMICA_RNG_HPP

#include <cmath>
#include <cstdint>

namespace lemica {

// Deterministic 64-bit stream (splitmix64). All seeded sampling in the
// project goes through this class so that output files are byte-identical
// across platforms; std:: distributions are not specified tightly enough
// for that.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_uniform();
    }

    // standard normal via Box-Muller; the second value is discarded so the
    // draw count per call is fixed
    double next_normal() {
        double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        double u2 = next_uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    uint64_t state_;
};

}  // namespace lemica

#endif
