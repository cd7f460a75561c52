#pragma once

// Critically sampled OFDM: one time sample per subcarrier. Data rides on the
// phase of each subcarrier symbol, the allocation sets its magnitude:
//   X_m = sqrt(P_m) * s_m,   s_m a unit-energy constellation point.

#include "isac/signal.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace isac::ofdm {

struct OfdmConfig {
    std::size_t n_subcarriers = 1024;
    double subcarrier_spacing = 1e6; // Hz
    double cp_fraction = 0.0;        // [0, 1)
    double total_power = 1.0;        // W
    Modulation modulation = Modulation::qpsk;

    double bandwidth() const noexcept { return static_cast<double>(n_subcarriers) * subcarrier_spacing; }
    double sample_period() const noexcept { return 1.0 / bandwidth(); }
    std::size_t cp_length() const;
    void validate() const;
};

// Per-subcarrier power {X_n} with mean_power P, so sum X_n = N P.
struct PowerAllocation {
    std::vector<double> power;
    double mean_power = 0.0;

    static PowerAllocation flat(std::size_t n, double mean_power);

    std::size_t size() const noexcept { return power.size(); }
    double total() const noexcept;
    // sum_n (X_n - P)^2
    double variance_sum() const noexcept;
    // Checks nonnegativity and |sum X - N P| <= tol * N P.
    bool feasible(double rel_tol = 1e-9) const noexcept;
};

// Frequency-domain symbol: constellation points scaled by sqrt(X_m).
ComplexSequence shape_symbols(const OfdmConfig& cfg, const PowerAllocation& alloc,
                              std::span<const std::uint8_t> bits);

// Time-domain OFDM symbol: unitary IDFT of the shaped symbols, with
// cp_length() samples of cyclic prefix prepended.
ComplexSequence modulate_symbol(const OfdmConfig& cfg, const PowerAllocation& alloc,
                                std::span<const std::uint8_t> bits);

// Same, starting from already-mapped frequency symbols.
ComplexSequence modulate_frequency(const OfdmConfig& cfg, std::span<const cplx> freq_symbols);

// Strips the cyclic prefix.
CVec body(const OfdmConfig& cfg, const ComplexSequence& symbol);

// Y_m = H_m X_m + N_m,  N_m ~ CN(0, N0 * df). Deterministic in seed.
CVec apply_freq_channel(std::span<const cplx> x, std::span<const cplx> h, double noise_psd,
                        double subcarrier_spacing, std::uint64_t seed);

} // namespace isac::ofdm
