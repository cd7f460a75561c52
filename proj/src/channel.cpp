#include "isac/channel.hpp"

#include "isac/error.hpp"
#include "isac/random.hpp"

#include <algorithm>
#include <cmath>

namespace isac::channel {

void ChannelProfile::validate() const
{
    if (taps.empty())
        throw DomainError("channel profile needs at least one tap");
    for (const auto& t : taps)
        if (!(t.delay >= 0.0) || !std::isfinite(t.delay))
            throw DomainError("tap delays must be nonnegative");
    if (noise_psd < 0.0)
        throw DomainError("noise PSD must be nonnegative");
}

CVec freq_response(const ChannelProfile& profile, std::size_t n_subcarriers, double subcarrier_spacing,
                   std::size_t symbol_index)
{
    profile.validate();
    if (!(subcarrier_spacing > 0.0))
        throw DomainError("subcarrier spacing must be positive");
    const double T = 1.0 / subcarrier_spacing;
    CVec H(n_subcarriers, cplx{});
    for (const auto& tap : profile.taps) {
        const cplx doppler = std::polar(1.0, 2.0 * kPi * tap.doppler * static_cast<double>(symbol_index) * T);
        for (std::size_t m = 0; m < n_subcarriers; ++m) {
            const double phase = -2.0 * kPi * static_cast<double>(m) * subcarrier_spacing * tap.delay;
            H[m] += tap.gain * doppler * std::polar(1.0, phase);
        }
    }
    return H;
}

ComplexSequence apply_time_channel(const ComplexSequence& x, const ChannelProfile& profile,
                                   std::uint64_t seed)
{
    profile.validate();
    const double dt = x.spacing();
    std::vector<std::size_t> lag(profile.taps.size());
    std::size_t max_lag = 0;
    for (std::size_t i = 0; i < lag.size(); ++i) {
        const double d = profile.taps[i].delay / dt;
        const double r = std::round(d);
        if (std::abs(d - r) > 1e-9 * std::max(1.0, r))
            throw DomainError("tap delay is not a multiple of the sample period");
        lag[i] = static_cast<std::size_t>(r);
        max_lag = std::max(max_lag, lag[i]);
    }

    CVec y(x.size() + max_lag, cplx{});
    for (std::size_t i = 0; i < lag.size(); ++i) {
        const auto& tap = profile.taps[i];
        for (std::size_t k = 0; k < x.size(); ++k) {
            const std::size_t out = k + lag[i];
            const cplx rot = std::polar(1.0, 2.0 * kPi * tap.doppler * static_cast<double>(out) * dt);
            y[out] += tap.gain * x[k] * rot;
        }
    }
    if (profile.noise_psd > 0.0) {
        Rng rng(seed);
        const CVec w = complex_gaussian(y.size(), profile.noise_psd / dt, rng);
        for (std::size_t k = 0; k < y.size(); ++k)
            y[k] += w[k];
    }
    return ComplexSequence(std::move(y), dt, Domain::time);
}

double pathloss_db(double distance_m, double coefficient, double intercept)
{
    if (!(distance_m > 0.0))
        throw DomainError("distance must be positive");
    return intercept + coefficient * std::log10(distance_m);
}

FadingProfile make_notched_profile(std::size_t n, const std::vector<double>& notch_centers,
                                   double depth_db, double width, double attenuation_db,
                                   FastFading fast, std::uint64_t seed)
{
    if (n == 0)
        throw DimensionError("profile needs at least one subcarrier");
    if (depth_db < 0.0 || !(width > 0.0))
        throw DomainError("notch depth must be nonnegative and width positive");
    FadingProfile p;
    p.fast = fast;
    for (double c : notch_centers) {
        if (c < 0.0 || c >= static_cast<double>(n))
            throw DomainError("notch center outside [0, N)");
        p.notches.push_back({c, depth_db, width});
    }

    p.slow_gain.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double loss_db = attenuation_db;
        for (const auto& notch : p.notches) {
            const double off = static_cast<double>(k) - notch.center;
            if (std::abs(off) < notch.width / 2.0)
                loss_db += notch.depth_db * 0.5 * (1.0 + std::cos(2.0 * kPi * off / notch.width));
        }
        p.slow_gain[k] = std::pow(10.0, -loss_db / 10.0);
    }

    p.gain = p.slow_gain;
    if (fast == FastFading::rayleigh) {
        Rng rng(seed);
        for (auto& g : p.gain)
            g *= std::norm(complex_gaussian(1.0, rng));
    }
    return p;
}

} // namespace isac::channel
