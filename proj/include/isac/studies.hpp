#pragma once

// Seeded Monte Carlo campaigns shared by the experiment recipes and the
// acceptance suite. Every trial draws from make_rng(seed, stream, trial), so
// results are independent of the worker count and earlier trials never
// change when more are added.

#include "isac/allocator.hpp"
#include "isac/channel.hpp"
#include "isac/otfs.hpp"
#include "isac/signal.hpp"

#include <cstdint>
#include <vector>

namespace isac::studies {

// Normalized aperiodic ISL of critically sampled OFDM bodies with flat
// allocation (unit mean power) and i.i.d. symbols of the given order.
RVec ofdm_isl_trials(std::size_t n_subcarriers, Modulation m, std::size_t trials, std::uint64_t seed,
                     std::uint64_t stream, std::size_t workers);

struct OtfsSetup {
    std::size_t M_tau = 80;
    std::size_t N_nu = 80;
    double subcarrier_spacing = 2.5e6;
    double E_s = 1.0;
    double E_p = 0.15;
};

// Normalized aperiodic ISL of the OTFS time signal. Trial t uses the same
// generator for every scheme, so schemes are compared on common data.
RVec otfs_isl_trials(const OtfsSetup& setup, const otfs::PilotScheme& scheme, std::size_t trials,
                     std::uint64_t seed, std::size_t workers);

// max_{l>0}|r(l)| / ||x||^2 for i.i.d. +-1 sequences.
RVec psl_trials(std::size_t n, std::size_t trials, std::uint64_t seed, std::size_t workers);

struct CrbSetup {
    std::size_t n_subcarriers = 256;
    std::size_t pad_factor = 2;    // reference length = pad_factor * N
    double sample_period = 1e-9;   // s
    std::size_t upsample = 4;
    double min_delay = 8.0;        // samples
    double max_delay = 128.0;
};

struct CrbPoint {
    double snr_db = 0.0;
    std::size_t trials = 0;
    double mse = 0.0;      // m^2, range c * tau
    double mse_se = 0.0;
    double crb = 0.0;      // m^2, mean over trials
    double ratio = 0.0;    // mse / crb
    double bias = 0.0;     // m
};

// Matched-filter ranging of a random-phase, fractionally delayed QPSK OFDM
// body in complex AWGN at per-sample SNR snr_db.
CrbPoint crb_monte_carlo(const CrbSetup& setup, double snr_db, std::size_t trials, std::uint64_t seed,
                         std::size_t workers);

// The allocation scenario with flat attenuation, two raised-cosine notches
// and optional Rayleigh fading on top.
struct AllocPreset {
    std::size_t N = 1024;
    double bandwidth = 1e9;
    double total_power = 0.2;    // W
    double attenuation_db = 50.0;
    double noise_psd = 1e-18;    // W/Hz
    double v0_scale = 1.0;       // V0 = v0_scale * P^2
    std::vector<double> notch_centers{260.0, 760.0};
    double notch_depth_db = 20.0;
    double notch_width = 32.0;
    double carrier = 0.0;
    bool absolute_frequency = false;

    double mean_power() const noexcept { return total_power / static_cast<double>(N); }
    RVec gains(bool rayleigh, std::uint64_t seed) const;
    alloc::AllocProblem problem(double alpha, const RVec& gains) const;
    // Baseband subcarrier offsets f_n - f_c in Hz.
    RVec frequency_offsets() const;
};

struct TradeoffSample {
    double rms_bandwidth = 0.0; // Hz
    double sum_rate = 0.0;      // bits/s
    double objective = 0.0;
    bool projected = false;
};

// result[a][t] for alphas[a] and trial t; fading is common across alphas.
std::vector<std::vector<TradeoffSample>> tradeoff(const AllocPreset& preset, const std::vector<double>& alphas,
                                                  std::size_t trials, std::uint64_t seed, std::size_t workers);

struct CompareSample {
    double two_stage = 0.0;
    double pg = 0.0;
    int pg_iterations = 0;
    bool projected = false;
};

std::vector<CompareSample> solver_compare(const AllocPreset& preset, double alpha, std::size_t trials,
                                          std::uint64_t seed, std::size_t workers, int pg_steps = 2000);

} // namespace isac::studies
