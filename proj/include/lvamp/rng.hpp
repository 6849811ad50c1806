#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace lvamp {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter). Parallel replications and random-access entry
// generation are reproducible regardless of evaluation order.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(mix(seed + 0x9e3779b97f4a7c15ULL) ^ mix(stream + 0x6a09e667f3bcc909ULL))) {}

    std::uint64_t bits(std::uint64_t counter) const {
        return mix(key_ + 0x9e3779b97f4a7c15ULL * (counter + 1));
    }

    /// Uniform draw in the open interval (0, 1).
    double uniform(std::uint64_t counter) const {
        return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
    }

    /// One standard normal per counter index (Box-Muller, cosine branch).
    double normal(std::uint64_t counter) const {
        const double u1 = uniform(2 * counter);
        const double u2 = uniform(2 * counter + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Derives a child seed, e.g. one per Monte Carlo replication.
    std::uint64_t derive(std::uint64_t index) const { return mix(key_ ^ bits(index)); }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 33;
        z *= 0xff51afd7ed558ccdULL;
        z ^= z >> 33;
        z *= 0xc4ceb9fe1a85ec53ULL;
        z ^= z >> 33;
        return z;
    }

    std::uint64_t key_;
};

// Stream identifiers, one per matrix role / sampling purpose.
namespace rng_stream {
inline constexpr std::uint64_t kGoe = 1;
inline constexpr std::uint64_t kAntisymmetricGoe = 2;
inline constexpr std::uint64_t kEllipticSymPart = 3;
inline constexpr std::uint64_t kEllipticAsymPart = 4;
inline constexpr std::uint64_t kLimitLawSample = 5;
inline constexpr std::uint64_t kReplication = 6;
}  // namespace rng_stream

}  // namespace lvamp
