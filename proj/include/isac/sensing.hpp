#pragma once

#include "isac/signal.hpp"

#include <cstdint>
#include <vector>

namespace isac::sensing {

// aperiodic:            sum_{l=1}^{N-1} |r(l)|^2 / r(0)^2, positive lags only
// aperiodic_two_sided:  the same over l = +-1..+-(N-1), i.e. twice the above
// circular:             sum_{l=1}^{N-1} |r_c(l)|^2 / r_c(0)^2
// The circular sidelobes fold both lag signs together, so the two-sided
// aperiodic value is its like-for-like counterpart.
enum class CorrMode { aperiodic, aperiodic_two_sided, circular };

// Throws DimensionError for |x| < 2 and DomainError for zero energy.
double isl(std::span<const cplx> x, CorrMode mode = CorrMode::aperiodic);
double isl(const ComplexSequence& x, CorrMode mode = CorrMode::aperiodic);

// max_{l>0} |r(l)| / r(0) of the aperiodic autocorrelation.
double psl(std::span<const cplx> x);
double psl(const ComplexSequence& x);

struct IslGapRow {
    std::size_t n = 0;
    std::size_t trials = 0;
    double mean_rel_error = 0.0;    // mean_t |ISL_a - ISL_c| / ISL_c
    double stderr_rel_error = 0.0;
    double rel_error_of_means = 0.0; // |mean ISL_a - mean ISL_c| / mean ISL_c
    double mean_isl_aperiodic = 0.0;
    double mean_isl_circular = 0.0;
};

// i.i.d. constellation symbols of length N per trial. ISL_a uses the
// two-sided aperiodic form. Trial t of length N draws from substream (N, t).
std::vector<IslGapRow> isl_gap_curve(const std::vector<std::size_t>& lengths, std::size_t trials,
                                     Modulation m, std::uint64_t seed);

// ---- ranging ----------------------------------------------------------------

// Received-model parameters for delay estimation. omega and psd sample
// |X(j w)|^2 on an ascending grid spanning [omega_c - W/2, omega_c + W/2].
struct RangingScenario {
    double amplitude = 1.0;     // A
    double omega_c = 0.0;       // rad/s
    double bandwidth = 1.0;     // W, rad/s
    double noise_psd = 1.0;     // N0, W/Hz
    RVec omega;
    RVec psd;

    void validate() const;
};

// Flat |X|^2 = p0 on npts equally spaced points of the band.
RangingScenario flat_scenario(double amplitude, double omega_c, double bandwidth, double noise_psd,
                              double p0, std::size_t npts = 4096);

// I = (A^2 / (N0 W)) * trapz(w^2 |X(jw)|^2, w)   [1/s^2]
double fisher_info(const RangingScenario& s);

// c^2 / I  [m^2]. Throws DomainError when I == 0.
double crb_ranging_mse(const RangingScenario& s);

// sqrt(I) / (c W), dimensionless.
double sensing_se(const RangingScenario& s);

// Flat-spectrum closed forms.
double fisher_info_flat(double amplitude, double omega_c, double bandwidth, double noise_psd, double p0);
double crb_flat(double amplitude, double omega_c, double bandwidth, double noise_psd, double p0);
double sensing_se_flat(double amplitude, double beta, double noise_psd, double p0);

// Sampled-signal bridge: a reference x at sample period dt, observed as
// y = A x(t - tau) + w with w_k ~ CN(0, sigma2). Unitary bins of the L-point
// DFT of x map to |X(w_m)|^2 = 2 L dt |X_m|^2 on the baseband grid
// w_m = 2 pi (m - L/2) / (L dt) with N0 = sigma2 dt, which makes fisher_info
// equal to (2 A^2 / sigma2) sum_m w_m^2 |X_m|^2.
RangingScenario discrete_scenario(std::span<const cplx> x, double dt, double amplitude, double sigma2);

// sqrt( trapz((2 pi (f - f_ref))^2 S) / trapz(S) ) / (2 pi), f_ref the grid
// midpoint. Throws DomainError for zero energy.
double rms_bandwidth(std::span<const double> psd, std::span<const double> freq);

// Lag of the |cross-correlation| peak between y and x_ref, on an upsampled
// grid (zero-padded FFT), refined by a parabola through the three samples
// around the peak and then by Newton steps on the exact band-limited
// correlation, so a noiseless fractional delay is recovered to rounding. Returns seconds, using x_ref's spacing. With circular =
// true the correlation wraps modulo |y| (requires |y| == |x_ref|), which is
// the matched filter for a circularly delayed observation.
double estimate_delay_mf(const ComplexSequence& y, const ComplexSequence& x_ref, std::size_t upsample = 8,
                         bool circular = false);

// Fractional circular delay by a frequency-domain phase ramp. Bin k stands
// for frequency k for 2k < L and k - L otherwise, so the Nyquist bin of an
// even length is -L/2; estimate_delay_mf uses the same frequency set.
CVec delay_signal(std::span<const cplx> x, double delay_samples);

// ---- imaging ----------------------------------------------------------------

struct ImagingParams {
    std::int64_t k1 = 0;
    std::int64_t k2 = 1;
    std::size_t K = 4;   // m = -K..K
    std::size_t N = 4;   // p = 1..N
    double dL = 1.0;
    double dk = 0.0;
};

// H = (1/(K2-K1)) sum_{k=K1}^{K2-1} F_k kron F_k^T with
// (F_k)_{pm} = exp(-j k dk p m dL^2); returns trace(H H^H) (sigma^2 = 1,
// unit-norm scene). Throws SizeError when N(2K+1) exceeds 512.
double imaging_snr(const ImagingParams& p);

} // namespace isac::sensing
