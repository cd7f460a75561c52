#pragma once

#include "isac/signal.hpp"

#include <cstdint>
#include <vector>

namespace isac::channel {

struct Tap {
    cplx gain{1.0, 0.0};
    double delay = 0.0;   // s, >= 0
    double doppler = 0.0; // Hz
};

struct ChannelProfile {
    std::vector<Tap> taps;
    double noise_psd = 0.0; // W/Hz

    void validate() const;
};

// H_m = sum_i h_i exp(-j 2 pi m df tau_i) exp(j 2 pi nu_i n T),  T = 1/df.
// The delay sign matches the DFT of apply_time_channel's output, so a tap
// delayed by d samples gives the ramp exp(-j 2 pi m d / N).
CVec freq_response(const ChannelProfile& profile, std::size_t n_subcarriers, double subcarrier_spacing,
                   std::size_t symbol_index = 0);

// y_k = sum_i h_i x_{k - d_i} exp(j 2 pi nu_i k dt) + w_k, with d_i = tau_i / dt
// an integer and w_k ~ CN(0, N0 / dt). The output is |x| + max d_i long.
// Throws DomainError for delays off the sample grid.
ComplexSequence apply_time_channel(const ComplexSequence& x, const ChannelProfile& profile,
                                   std::uint64_t seed);

inline constexpr double kPathlossIntercept = 48.6;
inline constexpr double kPathlossCoefficient = 3.5;

// intercept + coefficient * log10(d). Throws DomainError for d <= 0.
double pathloss_db(double distance_m, double coefficient = kPathlossCoefficient,
                   double intercept = kPathlossIntercept);

enum class FastFading { none, rayleigh };

struct Notch {
    double center = 0.0; // subcarrier index
    double depth_db = 20.0;
    double width = 32.0; // subcarriers, full width of the raised cosine
};

struct FadingProfile {
    RVec slow_gain; // |h_n|^2 of the deterministic part
    FastFading fast = FastFading::none;
    std::vector<Notch> notches;
    RVec gain;      // realized |h_n|^2 (slow times fast)
};

// Flat slow gain 10^(-attenuation_db/10) with raised-cosine notches carved in
// dB: attenuation depth * (1 + cos(2 pi (n - c) / width)) / 2 within
// |n - c| < width / 2. Overlapping notches add in dB. With Rayleigh fading
// each subcarrier power is multiplied by |g|^2, g ~ CN(0, 1).
FadingProfile make_notched_profile(std::size_t n, const std::vector<double>& notch_centers,
                                   double depth_db, double width, double attenuation_db,
                                   FastFading fast, std::uint64_t seed);

} // namespace isac::channel
