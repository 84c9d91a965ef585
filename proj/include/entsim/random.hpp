#pragma once

#include <cstdint>
#include <random>

namespace entsim {

/// splitmix64 step; used to derive independent per-setting sub-seeds.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

/// Deterministic Poisson sample: sequential inversion below mean 10,
/// transformed rejection (PTRS) up to the normal-approximation cutoff,
/// rounded Gaussian above it. Identical (mean, engine state) gives
/// identical output on a given platform.
double sample_poisson(double mean, std::mt19937_64& rng);

/// Mean above which sample_poisson switches to the normal approximation.
inline constexpr double kPoissonNormalCutoff = 1e6;

}  // namespace entsim
