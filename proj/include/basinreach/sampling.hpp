#pragma once

#include "basinreach/core.hpp"

#include <cstdint>
#include <random>

namespace basinreach {

/// Deterministic direction generator.
///
/// Uniforms come from the 64-bit linear congruential recurrence
///
///     s' = 6364136223846793005 * s + 1442695040888963407  (mod 2^64)
///
/// taking the top 53 bits of each state as u = (s >> 11) * 2^-53. Gaussians
/// are produced in pairs by Box-Muller,
///
///     z0 = sqrt(-2 ln(1 - u1)) cos(2 pi u2),  z1 = sqrt(-2 ln(1 - u1)) sin(2 pi u2),
///
/// and a unit direction is a normalized vector of `dim` such Gaussians.
/// The stream depends only on the seed.
class DirectionSampler {
public:
    using Engine = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL,
                                                   1442695040888963407ULL, 0ULL>;

    explicit DirectionSampler(std::uint64_t seed) : engine_(seed) {}

    double uniform();
    double gaussian();
    Vec direction(int dim);

private:
    Engine engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace basinreach
