#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace lawnsec {

using Rng = std::mt19937_64;

/// One SplitMix64 step; advances `state`.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Mixes a base seed with two stream indices into an independent seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) noexcept;

/// Generator seeded from derive_seed(base, a, b).
Rng make_rng(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

/// Circularly symmetric complex normal with unit variance, CN(0, 1).
std::complex<double> complex_normal(Rng& rng);

/// Uniform on [0, 1).
double uniform01(Rng& rng);

}  // namespace lawnsec
