#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tropbscs {

/// Per-replication random stream keyed by (seed, replication). Streams with
/// different keys are independent, so replications can run in any order or
/// concurrently and still reproduce bit-for-bit.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t replication = 0);

    /// Uniform on (0, 1], 53 bits.
    double uniform_open0() noexcept {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }
    /// Uniform on [0, 1), 53 bits.
    double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::uint64_t next_u64() noexcept { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Grid spacing for simulated time values: 2^-24 time units.
inline constexpr int kTimeGridBits = 24;

/// Round v to the nearest multiple of 2^-24. Sums of grid values stay exact
/// (hence associative) while their magnitude is below 2^29.
inline double snap_to_time_grid(double v) noexcept {
    return std::ldexp(std::nearbyint(std::ldexp(v, kTimeGridBits)), -kTimeGridBits);
}

}  // namespace tropbscs
