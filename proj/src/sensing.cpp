#include "isac/sensing.hpp"

#include "isac/error.hpp"
#include "isac/random.hpp"

#include <algorithm>
#include <cmath>

namespace isac::sensing {

double isl(std::span<const cplx> x, CorrMode mode)
{
    if (x.size() < 2)
        throw DimensionError("ISL needs at least two samples");
    const CVec r = mode == CorrMode::circular ? acorr_circular(x) : acorr_aperiodic(x);
    const double r0 = std::abs(r[0]);
    if (!(r0 > 0.0))
        throw DomainError("ISL of a zero-energy sequence");
    double side = 0.0;
    for (std::size_t l = 1; l < r.size(); ++l)
        side += std::norm(r[l]);
    if (mode == CorrMode::aperiodic_two_sided)
        side *= 2.0;
    return side / (r0 * r0);
}

double isl(const ComplexSequence& x, CorrMode mode) { return isl(x.samples(), mode); }

double psl(std::span<const cplx> x)
{
    if (x.size() < 2)
        throw DimensionError("PSL needs at least two samples");
    const CVec r = acorr_aperiodic(x);
    const double r0 = std::abs(r[0]);
    if (!(r0 > 0.0))
        throw DomainError("PSL of a zero-energy sequence");
    double peak = 0.0;
    for (std::size_t l = 1; l < r.size(); ++l)
        peak = std::max(peak, std::abs(r[l]));
    return peak / r0;
}

double psl(const ComplexSequence& x) { return psl(x.samples()); }

std::vector<IslGapRow> isl_gap_curve(const std::vector<std::size_t>& lengths, std::size_t trials,
                                     Modulation m, std::uint64_t seed)
{
    if (trials == 0)
        throw DomainError("isl_gap_curve needs at least one trial");
    std::vector<IslGapRow> rows;
    for (std::size_t n : lengths) {
        if (n < 4)
            throw DomainError("sequence length must be at least 4");
        IslGapRow row;
        row.n = n;
        row.trials = trials;
        double sum = 0.0, sum_sq = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng = make_rng(seed, n, t);
            const CVec x = random_symbols(n, m, rng);
            const double a = isl(x, CorrMode::aperiodic_two_sided);
            const double c = isl(x, CorrMode::circular);
            const double e = std::abs(a - c) / c;
            sum += e;
            sum_sq += e * e;
            row.mean_isl_aperiodic += a;
            row.mean_isl_circular += c;
        }
        const double k = static_cast<double>(trials);
        row.mean_rel_error = sum / k;
        const double var = trials > 1 ? (sum_sq - k * row.mean_rel_error * row.mean_rel_error) / (k - 1.0) : 0.0;
        row.stderr_rel_error = std::sqrt(std::max(var, 0.0) / k);
        row.mean_isl_aperiodic /= k;
        row.mean_isl_circular /= k;
        row.rel_error_of_means = std::abs(row.mean_isl_aperiodic - row.mean_isl_circular) / row.mean_isl_circular;
        rows.push_back(row);
    }
    return rows;
}

// ---- ranging ----------------------------------------------------------------

void RangingScenario::validate() const
{
    if (!(amplitude > 0.0))
        throw DomainError("attenuation A must be positive");
    if (!(bandwidth > 0.0))
        throw DomainError("bandwidth W must be positive");
    if (!(noise_psd > 0.0))
        throw DomainError("noise PSD must be positive");
    if (omega.size() < 2 || omega.size() != psd.size())
        throw DimensionError("PSD needs at least two samples on a matching grid");
    for (std::size_t i = 0; i < psd.size(); ++i) {
        if (psd[i] < 0.0)
            throw DomainError("PSD samples must be nonnegative");
        if (i > 0 && !(omega[i] > omega[i - 1]))
            throw DomainError("frequency grid must be strictly ascending");
    }
}

RangingScenario flat_scenario(double amplitude, double omega_c, double bandwidth, double noise_psd,
                              double p0, std::size_t npts)
{
    if (npts < 2)
        throw DimensionError("flat scenario needs at least two grid points");
    RangingScenario s{amplitude, omega_c, bandwidth, noise_psd, RVec(npts), RVec(npts, p0)};
    const double lo = omega_c - bandwidth / 2.0;
    for (std::size_t i = 0; i < npts; ++i)
        s.omega[i] = lo + bandwidth * static_cast<double>(i) / static_cast<double>(npts - 1);
    return s;
}

namespace {

template <class F>
double trapz(std::span<const double> x, F&& f)
{
    double acc = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        acc += 0.5 * (f(i - 1) + f(i)) * (x[i] - x[i - 1]);
    return acc;
}

} // namespace

double fisher_info(const RangingScenario& s)
{
    s.validate();
    const double integral = trapz(s.omega, [&](std::size_t i) { return s.omega[i] * s.omega[i] * s.psd[i]; });
    return s.amplitude * s.amplitude * integral / (s.noise_psd * s.bandwidth);
}

double crb_ranging_mse(const RangingScenario& s)
{
    const double I = fisher_info(s);
    if (!(I > 0.0))
        throw DomainError("Fisher information is zero, the bound is unbounded");
    return kSpeedOfLight * kSpeedOfLight / I;
}

double sensing_se(const RangingScenario& s)
{
    return std::sqrt(fisher_info(s)) / (kSpeedOfLight * s.bandwidth);
}

double fisher_info_flat(double amplitude, double omega_c, double bandwidth, double noise_psd, double p0)
{
    const double W = bandwidth;
    return amplitude * amplitude * p0 * (omega_c * omega_c * W + W * W * W / 12.0) / (noise_psd * W);
}

double crb_flat(double amplitude, double omega_c, double bandwidth, double noise_psd, double p0)
{
    return noise_psd * kSpeedOfLight * kSpeedOfLight /
           (amplitude * amplitude * p0 * (omega_c * omega_c + bandwidth * bandwidth / 12.0));
}

double sensing_se_flat(double amplitude, double beta, double noise_psd, double p0)
{
    return amplitude * std::sqrt(p0 * (beta * beta + 1.0 / 12.0)) / (kSpeedOfLight * std::sqrt(noise_psd));
}

RangingScenario discrete_scenario(std::span<const cplx> x, double dt, double amplitude, double sigma2)
{
    if (x.size() < 2)
        throw DimensionError("reference needs at least two samples");
    if (!(dt > 0.0) || !(sigma2 > 0.0))
        throw DomainError("sample period and noise variance must be positive");
    const std::size_t L = x.size();
    const RVec bins = psd(x);
    const double Ld = static_cast<double>(L);
    RangingScenario s;
    s.amplitude = amplitude;
    s.bandwidth = 2.0 * kPi / dt;
    s.noise_psd = sigma2 * dt;
    s.omega.resize(L);
    s.psd.resize(L);
    // Reorder to ascending signed frequency: m - L/2 for m = 0..L-1.
    for (std::size_t m = 0; m < L; ++m) {
        const std::size_t k = (m + L - L / 2) % L;
        s.omega[m] = 2.0 * kPi * (static_cast<double>(m) - static_cast<double>(L / 2)) / (Ld * dt);
        s.psd[m] = 2.0 * Ld * dt * bins[k];
    }
    s.omega_c = 0.5 * (s.omega.front() + s.omega.back());
    return s;
}

double rms_bandwidth(std::span<const double> psd_samples, std::span<const double> freq)
{
    if (psd_samples.size() != freq.size() || freq.size() < 2)
        throw DimensionError("PSD and frequency grid must match and have at least two points");
    const double f_ref = 0.5 * (freq.front() + freq.back());
    const double e = trapz(freq, [&](std::size_t i) { return psd_samples[i]; });
    if (!(e > 0.0))
        throw DomainError("RMS bandwidth of a zero-energy spectrum");
    const double m2 = trapz(freq, [&](std::size_t i) {
        const double w = 2.0 * kPi * (freq[i] - f_ref);
        return w * w * psd_samples[i];
    });
    return std::sqrt(m2 / e) / (2.0 * kPi);
}

double estimate_delay_mf(const ComplexSequence& y, const ComplexSequence& x_ref, std::size_t upsample,
                         bool circular)
{
    if (y.size() < x_ref.size())
        throw DimensionError("observation shorter than the reference");
    if (circular && y.size() != x_ref.size())
        throw DimensionError("circular matched filter needs equal lengths");
    if (upsample == 0)
        throw DomainError("upsample factor must be at least 1");
    const std::size_t n = circular ? y.size() : y.size() + x_ref.size();
    CVec Y(n, cplx{}), R(n, cplx{});
    std::copy(y.samples().begin(), y.samples().end(), Y.begin());
    std::copy(x_ref.samples().begin(), x_ref.samples().end(), R.begin());
    fft_inplace(Y);
    fft_inplace(R);

    const std::size_t U = upsample;
    const std::size_t nu = n * U;
    CVec C(nu, cplx{});
    for (std::size_t k = 0; k < n; ++k) {
        const cplx v = Y[k] * std::conj(R[k]);
        if (2 * k < n)
            C[k] = v;
        else
            C[nu - (n - k)] = v;
    }
    ifft_inplace(C);

    const std::size_t span_len = y.size() * U;
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t i = 0; i < span_len; ++i) {
        const double a = std::abs(C[i]);
        if (a > best_mag) {
            best_mag = a;
            best = i;
        }
    }
    double frac = 0.0;
    if (circular || (best > 0 && best + 1 < nu)) {
        const double a = std::abs(C[(best + nu - 1) % nu]);
        const double b = best_mag;
        const double c = std::abs(C[(best + 1) % nu]);
        const double den = a - 2.0 * b + c;
        if (den < 0.0)
            frac = std::clamp(0.5 * (a - c) / den, -0.5, 0.5);
    }
    double lag = (static_cast<double>(best) + frac) / static_cast<double>(U);

    // The parabola is biased by O(1/U^2); finish with Newton steps on |c(t)|^2
    // where c(t) = sum_f V_f e^{j 2 pi f t / n} is the exact band-limited
    // correlation over the same frequency set as above.
    std::vector<double> freq(n);
    for (std::size_t k = 0; k < n; ++k)
        freq[k] = 2 * k < n ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
    const double w0 = 2.0 * kPi / static_cast<double>(n);
    const double max_step = 1.0 / static_cast<double>(U);
    for (int it = 0; it < 4; ++it) {
        cplx c0{}, c1{}, c2{};
        for (std::size_t k = 0; k < n; ++k) {
            const double w = w0 * freq[k];
            const cplx v = Y[k] * std::conj(R[k]) * std::polar(1.0, w * lag);
            c0 += v;
            c1 += cplx(0.0, w) * v;
            c2 -= w * w * v;
        }
        const double g1 = 2.0 * std::real(std::conj(c0) * c1);
        const double g2 = 2.0 * (std::norm(c1) + std::real(std::conj(c0) * c2));
        if (!(g2 < 0.0))
            break;
        const double step = std::clamp(-g1 / g2, -max_step, max_step);
        lag += step;
        if (std::abs(step) < 1e-12)
            break;
    }
    if (!circular)
        lag = std::clamp(lag, 0.0, static_cast<double>(y.size()));
    return lag * x_ref.spacing();
}

CVec delay_signal(std::span<const cplx> x, double delay_samples)
{
    CVec X(x.begin(), x.end());
    const std::size_t L = X.size();
    if (L == 0)
        return X;
    fft_inplace(X);
    for (std::size_t k = 0; k < L; ++k) {
        const double f = 2 * k < L ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(L);
        X[k] *= std::polar(1.0, -2.0 * kPi * f * delay_samples / static_cast<double>(L));
    }
    ifft_inplace(X);
    for (auto& v : X)
        v /= static_cast<double>(L);
    return X;
}

// ---- imaging ----------------------------------------------------------------

double imaging_snr(const ImagingParams& p)
{
    if (p.k2 <= p.k1)
        throw DomainError("imaging needs K2 > K1");
    if (p.K == 0 || p.N == 0)
        throw DimensionError("imaging grid must be nonempty");
    const std::size_t cols = 2 * p.K + 1;
    const std::size_t dim = p.N * cols;
    if (dim > 512)
        throw SizeError("Kronecker dimension " + std::to_string(dim) + " exceeds 512");

    CMatrix H(dim, dim);
    CMatrix F(p.N, cols);
    const double dl2 = p.dL * p.dL;
    for (std::int64_t k = p.k1; k < p.k2; ++k) {
        for (std::size_t pi = 0; pi < p.N; ++pi)
            for (std::size_t mi = 0; mi < cols; ++mi) {
                const double pp = static_cast<double>(pi + 1);
                const double mm = static_cast<double>(mi) - static_cast<double>(p.K);
                F(pi, mi) = std::polar(1.0, -static_cast<double>(k) * p.dk * pp * mm * dl2);
            }
        // (F kron F^T)(a*cols + i, b*N + j) = F(a, b) * F(j, i)
        for (std::size_t a = 0; a < p.N; ++a)
            for (std::size_t i = 0; i < cols; ++i)
                for (std::size_t b = 0; b < cols; ++b)
                    for (std::size_t j = 0; j < p.N; ++j)
                        H(a * cols + i, b * p.N + j) += F(a, b) * F(j, i);
    }
    const double scale = 1.0 / static_cast<double>(p.k2 - p.k1);
    return H.frobenius_sq() * scale * scale;
}

} // namespace isac::sensing
