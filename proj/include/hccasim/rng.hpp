// Seed derivation and uniform draws.
//
// Every random stream in the simulator is an mt19937_64 engine whose seed is
// derived from the run seed through splitmix64. Per-station streams mix the
// station id into the seed, so adding or removing a station never perturbs
// another station's draw sequence.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hccasim {

/// One step of the splitmix64 sequence; a cheap, well-distributed 64-bit mixer.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Engine for substream `index` of run seed `seed`.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 1)));
}

/// Uniform draw in [0, 1) with 53 bits of resolution. The mapping is pinned
/// here rather than delegated to std::uniform_real_distribution, whose
/// sequences are implementation-defined.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal draw via Box-Muller. Consumes exactly two engine outputs.
inline double standard_normal(std::mt19937_64& rng) {
    double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

}  // namespace hccasim
