#pragma once

// Counter-based normal variates for path-parallel Monte Carlo.
//
// Every Wiener increment is a pure function of (seed, path, step, component,
// stream): two calls with the same counter return bit-identical values, and
// distinct counters are independent streams.  This is what makes simulations
// reproducible regardless of scheduling or evaluation order.
//
// Generator: Philox-4x32-10 (Salmon et al., "Parallel random numbers: as easy
// as 1, 2, 3").  One block gives four 32-bit words; we map them to two
// uniforms in (0,1) and one standard normal via Box-Muller.

#include "core.hpp"

#include <cmath>
#include <cstdint>

namespace smpforge {

namespace detail {

struct PhiloxBlock {
    std::uint32_t w[4];
};

inline void philox_round(std::uint32_t c[4], std::uint32_t k0, std::uint32_t k1) {
    constexpr std::uint64_t M0 = 0xD2511F53ull;
    constexpr std::uint64_t M1 = 0xCD9E8D57ull;
    const std::uint64_t p0 = M0 * c[0];
    const std::uint64_t p1 = M1 * c[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    const std::uint32_t r0 = hi1 ^ c[1] ^ k0;
    const std::uint32_t r1 = lo1;
    const std::uint32_t r2 = hi0 ^ c[3] ^ k1;
    const std::uint32_t r3 = lo0;
    c[0] = r0; c[1] = r1; c[2] = r2; c[3] = r3;
}

inline PhiloxBlock philox4x32_10(std::uint32_t c0, std::uint32_t c1,
                                 std::uint32_t c2, std::uint32_t c3,
                                 std::uint64_t key) {
    std::uint32_t c[4] = {c0, c1, c2, c3};
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
        philox_round(c, k0, k1);
        k0 += 0x9E3779B9u;
        k1 += 0xBB67AE85u;
    }
    return PhiloxBlock{{c[0], c[1], c[2], c[3]}};
}

// Two words -> uniform strictly inside (0,1).
inline double to_unit_open(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t x = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return (static_cast<double>(x >> 11) + 0.5) * 0x1p-53;
}

} // namespace detail

// Independent counter streams; keeps inner (nested) simulations and
// instance-generation draws decoupled from the path increments.
enum class NoiseStream : std::uint32_t {
    increments = 0,
    nested = 1,
    scratch = 2,
};

struct NoiseSeed {
    std::uint64_t master_seed = 0;

    // Standard normal indexed by (path, step, component[, stream]).
    double normal(std::uint64_t path, std::uint32_t step, std::uint32_t component,
                  std::uint32_t stream = 0) const {
        const auto block = detail::philox4x32_10(
            static_cast<std::uint32_t>(path),
            static_cast<std::uint32_t>(path >> 32),
            step, component | (stream << 20), master_seed);
        const double u1 = detail::to_unit_open(block.w[0], block.w[1]);
        const double u2 = detail::to_unit_open(block.w[2], block.w[3]);
        constexpr double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }
};

// Grid view of the Wiener processes.  `refine_log2` levels of dyadic
// refinement share the same underlying fine lattice, so a run at n_steps and
// one at 2*n_steps can be driven by the same Brownian paths; increments of the
// coarser grid are sums of the finer ones.  At refine_log2 = 0 the increment
// for (path p, step j, component i) is exactly normal(seed,p,j,i) * sqrt(dt).
class WienerGrid {
public:
    WienerGrid(NoiseSeed seed, int n_steps, int n_noise, int refine_log2 = 0,
               NoiseStream stream = NoiseStream::increments,
               std::uint64_t path_offset = 0)
        : seed_(seed), n_steps_(n_steps), n_noise_(n_noise),
          refine_(refine_log2), stream_(static_cast<std::uint32_t>(stream)),
          path_offset_(path_offset) {
        require(n_steps >= 1 && n_noise >= 1, "WienerGrid: bad dimensions");
        require(refine_log2 >= 0 && refine_log2 < 16, "WienerGrid: bad refinement");
        fine_sqrt_dt_ = std::sqrt(1.0 / (static_cast<double>(n_steps) *
                                         static_cast<double>(1u << refine_)));
    }

    int n_steps() const { return n_steps_; }
    int n_noise() const { return n_noise_; }
    double dt() const { return 1.0 / static_cast<double>(n_steps_); }

    // Increment of W^i over [t_j, t_{j+1}].
    double increment(std::uint64_t path, int step, int component) const {
        const std::uint32_t fine_per_step = 1u << refine_;
        const std::uint32_t base = static_cast<std::uint32_t>(step) * fine_per_step;
        double sum = 0.0;
        for (std::uint32_t s = 0; s < fine_per_step; ++s) {
            sum += seed_.normal(path + path_offset_, base + s,
                                static_cast<std::uint32_t>(component), stream_);
        }
        return sum * fine_sqrt_dt_;
    }

    // All components for one step, written into out (size n_noise).
    void increments(std::uint64_t path, int step, double* out) const {
        for (int i = 0; i < n_noise_; ++i) out[i] = increment(path, step, i);
    }

private:
    NoiseSeed seed_;
    int n_steps_;
    int n_noise_;
    int refine_;
    std::uint32_t stream_;
    std::uint64_t path_offset_;
    double fine_sqrt_dt_;
};

} // namespace smpforge
