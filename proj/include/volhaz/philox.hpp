#pragma once

#include <cmath>
#include <cstdint>

// Philox4x32-10 counter-based generator (Salmon et al., "Parallel random
// numbers: as easy as 1, 2, 3", SC 2011). A fixed (key, counter) pair always
// yields the same 128-bit block, so every (seed, path, block) draw is
// reproducible regardless of scheduling or parallel execution order.

namespace volhaz {

struct PhiloxBlock {
    std::uint32_t x[4];
};

inline PhiloxBlock philox4x32(std::uint64_t key, std::uint64_t counter_hi,
                              std::uint64_t counter_lo) {
    constexpr std::uint32_t kW32A = 0x9E3779B9u, kW32B = 0xBB67AE85u;
    constexpr std::uint32_t kM4x32A = 0xD2511F53u, kM4x32B = 0xCD9E8D57u;
    std::uint32_t c0 = static_cast<std::uint32_t>(counter_lo);
    std::uint32_t c1 = static_cast<std::uint32_t>(counter_lo >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(counter_hi);
    std::uint32_t c3 = static_cast<std::uint32_t>(counter_hi >> 32);
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kM4x32A) * c0;
        const std::uint64_t p1 = static_cast<std::uint64_t>(kM4x32B) * c2;
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        const std::uint32_t n0 = hi1 ^ c1 ^ k0;
        const std::uint32_t n1 = lo1;
        const std::uint32_t n2 = hi0 ^ c3 ^ k1;
        const std::uint32_t n3 = lo0;
        c0 = n0;
        c1 = n1;
        c2 = n2;
        c3 = n3;
        k0 += kW32A;
        k1 += kW32B;
    }
    return {{c0, c1, c2, c3}};
}

// Uniform in (0, 1] from 53 random bits; safe to feed to log().
inline double philox_uniform(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

struct NormalPair {
    double z0, z1;
};

// Two independent standard normals for (seed, path, block) via Box-Muller.
inline NormalPair philox_normal_pair(std::uint64_t seed, std::uint64_t path,
                                     std::uint64_t block) {
    const PhiloxBlock b = philox4x32(seed, path, block);
    const double u1 = philox_uniform(b.x[0], b.x[1]);
    const double u2 = philox_uniform(b.x[2], b.x[3]);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace volhaz
