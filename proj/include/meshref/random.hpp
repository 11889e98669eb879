#pragma once

#include <cmath>
#include <cstdint>

namespace meshref {

// splitmix64; used both as a generator and to derive stream seeds. Hand-rolled
// so sampled values are bit-identical across standard library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal via Box-Muller (one value per call, cached pair discarded
    // deliberately to keep the stream position easy to reason about)
    double normal();

    std::uint32_t next_below(std::uint32_t n) {
        return static_cast<std::uint32_t>(next_u64() % n);
    }

    // independent child stream, stable under reordering of other draws
    Rng fork(std::uint64_t stream_id) const {
        Rng r(state_ ^ (0x6a09e667f3bcc909ull + stream_id * 0x3c6ef372fe94f82bull));
        return r;
    }

private:
    std::uint64_t state_;
};

inline double Rng::normal() {
    // Box-Muller, fresh pair each call
    double u1 = uniform();
    while (u1 <= 1e-300)
        u1 = uniform();
    const double u2 = uniform();
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

} // namespace meshref
