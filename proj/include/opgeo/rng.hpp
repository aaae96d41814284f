#pragma once

#include <cmath>
#include <cstdint>

namespace opgeo {

// SplitMix64: tiny deterministic generator. All randomness in the project
// flows from one seed through fork(), so every report is reproducible
// bit-for-bit for a fixed seed regardless of call interleaving.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller; no cached spare, so the stream
    // position is a pure function of the call count.
    double gaussian() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    // Independent child stream labeled by `label`.
    SplitMix64 fork(std::uint64_t label) {
        SplitMix64 mixer(state_ ^ (0x9e3779b97f4a7c15ULL * (label + 0x632be59bd9b4e019ULL)));
        mixer.next_u64();
        return SplitMix64(mixer.next_u64());
    }

private:
    std::uint64_t state_;
};

}  // namespace opgeo
