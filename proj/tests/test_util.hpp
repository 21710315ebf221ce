#ifndef WAISTBAND_TEST_UTIL_HPP
#define WAISTBAND_TEST_UTIL_HPP

#include <algorithm>
#include <cstdint>
#include <random>

namespace testutil {

// Deterministic uniform values built from raw engine bits so the generated
// test data does not depend on the standard library's distribution
// implementations.
class Rand {
public:
    explicit Rand(std::uint64_t seed) : rng_(seed) {}

    double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }  // [0, 1)
    // Closed interval: lo + (hi - lo) * u can round past hi near u = 1.
    double in(double lo, double hi) { return std::min(hi, lo + (hi - lo) * unit()); }
    std::uint64_t bits() { return rng_(); }
    int int_in(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(bits() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace testutil

#endif
