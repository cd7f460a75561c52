#include "isac/ofdm.hpp"

#include "isac/error.hpp"
#include "isac/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace isac::ofdm {

std::size_t OfdmConfig::cp_length() const
{
    return static_cast<std::size_t>(std::ceil(cp_fraction * static_cast<double>(n_subcarriers) - 1e-12));
}

void OfdmConfig::validate() const
{
    if (n_subcarriers < 2)
        throw DomainError("OFDM needs at least two subcarriers");
    if (!(subcarrier_spacing > 0.0))
        throw DomainError("subcarrier spacing must be positive");
    if (!(cp_fraction >= 0.0 && cp_fraction < 1.0))
        throw DomainError("cp_fraction must lie in [0, 1)");
    if (!(total_power > 0.0))
        throw DomainError("total power must be positive");
}

PowerAllocation PowerAllocation::flat(std::size_t n, double mean_power)
{
    return PowerAllocation{std::vector<double>(n, mean_power), mean_power};
}

double PowerAllocation::total() const noexcept
{
    return std::accumulate(power.begin(), power.end(), 0.0);
}

double PowerAllocation::variance_sum() const noexcept
{
    double v = 0.0;
    for (double x : power)
        v += (x - mean_power) * (x - mean_power);
    return v;
}

bool PowerAllocation::feasible(double rel_tol) const noexcept
{
    if (std::any_of(power.begin(), power.end(), [](double x) { return x < 0.0; }))
        return false;
    const double target = static_cast<double>(power.size()) * mean_power;
    return std::abs(total() - target) <= rel_tol * target;
}

ComplexSequence shape_symbols(const OfdmConfig& cfg, const PowerAllocation& alloc,
                              std::span<const std::uint8_t> bits)
{
    cfg.validate();
    const auto& c = constellation(cfg.modulation);
    const std::size_t need = cfg.n_subcarriers * static_cast<std::size_t>(c.bits_per_symbol);
    if (bits.size() != need)
        throw DimensionError("expected " + std::to_string(need) + " bits, got " + std::to_string(bits.size()));
    if (alloc.size() != cfg.n_subcarriers)
        throw DimensionError("allocation length does not match subcarrier count");
    ComplexSequence sym = map_bits(bits, c, cfg.subcarrier_spacing, Domain::frequency);
    for (std::size_t m = 0; m < cfg.n_subcarriers; ++m) {
        if (alloc.power[m] < 0.0)
            throw DomainError("negative subcarrier power");
        sym.samples()[m] *= std::sqrt(alloc.power[m]);
    }
    return sym;
}

ComplexSequence modulate_frequency(const OfdmConfig& cfg, std::span<const cplx> freq_symbols)
{
    cfg.validate();
    if (freq_symbols.size() != cfg.n_subcarriers)
        throw DimensionError("frequency symbol count does not match subcarrier count");
    const CVec time = idft(freq_symbols);
    const std::size_t cp = cfg.cp_length();
    CVec out;
    out.reserve(cp + time.size());
    out.insert(out.end(), time.end() - static_cast<std::ptrdiff_t>(cp), time.end());
    out.insert(out.end(), time.begin(), time.end());
    return ComplexSequence(std::move(out), cfg.sample_period(), Domain::time);
}

ComplexSequence modulate_symbol(const OfdmConfig& cfg, const PowerAllocation& alloc,
                                std::span<const std::uint8_t> bits)
{
    const ComplexSequence sym = shape_symbols(cfg, alloc, bits);
    return modulate_frequency(cfg, sym.samples());
}

CVec body(const OfdmConfig& cfg, const ComplexSequence& symbol)
{
    const std::size_t cp = cfg.cp_length();
    if (symbol.size() != cp + cfg.n_subcarriers)
        throw DimensionError("symbol length does not match configuration");
    return CVec(symbol.samples().begin() + static_cast<std::ptrdiff_t>(cp), symbol.samples().end());
}

CVec apply_freq_channel(std::span<const cplx> x, std::span<const cplx> h, double noise_psd,
                        double subcarrier_spacing, std::uint64_t seed)
{
    if (x.size() != h.size())
        throw DimensionError("channel response length does not match symbol count");
    if (noise_psd < 0.0)
        throw DomainError("noise PSD must be nonnegative");
    if (!(subcarrier_spacing > 0.0))
        throw DomainError("subcarrier spacing must be positive");
    CVec y(x.size());
    for (std::size_t m = 0; m < x.size(); ++m)
        y[m] = h[m] * x[m];
    if (noise_psd > 0.0) {
        Rng rng(seed);
        const CVec w = complex_gaussian(x.size(), noise_psd * subcarrier_spacing, rng);
        for (std::size_t m = 0; m < y.size(); ++m)
            y[m] += w[m];
    }
    return y;
}

} // namespace isac::ofdm
