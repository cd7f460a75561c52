#pragma once

#include "isac/ofdm.hpp"
#include "isac/signal.hpp"

#include <vector>

namespace isac::comm {

// log2(1 + snr). Throws DomainError for snr < 0.
double gaussian_se(double snr);

// Mutual information of equiprobable QPSK on the complex AWGN channel at
// Es/N0 = snr, in bits per channel use. Computed as twice the binary-input
// real-channel value at per-dimension SNR snr (each rail carries half the
// symbol energy against half the noise) with Gauss-Hermite
// quadrature of the given order.
double qpsk_mi(double snr, int order = 64);

// sum_n (B/N) log2(1 + |h_n|^2 X_n / (N0 B / N))   [bits/s]
double sum_rate(const ofdm::PowerAllocation& alloc, std::span<const double> gains, double noise_psd,
                double bandwidth);
// sum_n log2(1 + |h_n|^2 X_n / (N0 B / N))   [bits per OFDM symbol]
double sum_rate_bits(const ofdm::PowerAllocation& alloc, std::span<const double> gains, double noise_psd,
                     double bandwidth);

struct LinkBudget {
    double tx_power = 0.2;         // W
    double distance = 100.0;       // m
    double bandwidth = 500e6;      // Hz
    double noise_psd = 1e-18;      // W/Hz (-150 dBm/Hz)
    double pathloss_coefficient = 3.5;
    double pathloss_intercept = 48.6;

    void validate() const;
    double pathloss_db() const;
    // P 10^(-L/10) / (N0 B)
    double snr() const;
};

enum class Signaling { gaussian, qpsk };

struct SeRow {
    double bandwidth = 0.0;
    double distance = 0.0;
    double snr = 0.0;
    double gaussian_se = 0.0;  // bits/s/Hz
    double qpsk_se = 0.0;
    double gaussian_rate = 0.0; // bits/s
    double qpsk_rate = 0.0;
    double rel_gap = 0.0;       // (gaussian - qpsk) / gaussian
};

// One row per (bandwidth, distance) with both signalings at the same SNR,
// rows ordered by bandwidth then distance.
std::vector<SeRow> se_vs_distance(const LinkBudget& base, const std::vector<double>& distances,
                                  const std::vector<double>& bandwidths);

// (gaussian - qpsk) / gaussian at the given SNR; 0 at snr = 0.
double relative_gap(double snr);

struct GapCell {
    double power = 0.0;
    double distance = 0.0;
    bool feasible = false;
    double min_bandwidth = 0.0; // smallest grid bandwidth with gap <= v; 0 when none
    double gap_at_min = 0.0;
};

// For each (power, distance), scans the ascending bandwidth grid for the
// first point where the relative gap is at most v.
std::vector<GapCell> gap_region(const LinkBudget& base, const std::vector<double>& powers,
                                const std::vector<double>& distances, const std::vector<double>& bandwidths,
                                double v);

} // namespace isac::comm
