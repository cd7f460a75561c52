#pragma once

#include "isac/signal.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace isac {

using Rng = std::mt19937_64;

// Counter-derived substream seed. Trial i of stream s under master seed m
// always gets the same generator, independent of how many other trials run
// or in which order workers pick them up.
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) noexcept;

inline Rng make_rng(std::uint64_t master, std::uint64_t stream, std::uint64_t index)
{
    return Rng(substream_seed(master, stream, index));
}

std::vector<std::uint8_t> random_bits(std::size_t n, Rng& rng);

// n i.i.d. equiprobable points of the constellation.
CVec random_symbols(std::size_t n, Modulation m, Rng& rng);

// Circularly symmetric complex Gaussian with E|z|^2 = variance.
cplx complex_gaussian(double variance, Rng& rng);
CVec complex_gaussian(std::size_t n, double variance, Rng& rng);

} // namespace isac
