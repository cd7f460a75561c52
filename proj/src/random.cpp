#include "isac/random.hpp"

#include <cmath>

namespace isac {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) noexcept
{
    return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index);
}

std::vector<std::uint8_t> random_bits(std::size_t n, Rng& rng)
{
    std::vector<std::uint8_t> bits(n);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i % 64 == 0)
            word = rng();
        bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
    }
    return bits;
}

CVec random_symbols(std::size_t n, Modulation m, Rng& rng)
{
    const auto& c = constellation(m);
    std::uniform_int_distribution<std::size_t> pick(0, c.points.size() - 1);
    CVec out(n);
    for (auto& v : out)
        v = c.points[pick(rng)];
    return out;
}

cplx complex_gaussian(double variance, Rng& rng)
{
    std::normal_distribution<double> g(0.0, std::sqrt(variance / 2.0));
    const double re = g(rng);
    const double im = g(rng);
    return {re, im};
}

CVec complex_gaussian(std::size_t n, double variance, Rng& rng)
{
    std::normal_distribution<double> g(0.0, std::sqrt(variance / 2.0));
    CVec out(n);
    for (auto& v : out) {
        const double re = g(rng);
        const double im = g(rng);
        v = {re, im};
    }
    return out;
}

} // namespace isac
