#include "isac/studies.hpp"

#include "isac/comm.hpp"
#include "isac/error.hpp"
#include "isac/ofdm.hpp"
#include "isac/parallel.hpp"
#include "isac/random.hpp"
#include "isac/sensing.hpp"

#include <cmath>

namespace isac::studies {

namespace {

constexpr std::uint64_t kStreamOtfs = 100;
constexpr std::uint64_t kStreamPsl = 200;
constexpr std::uint64_t kStreamCrb = 300;
constexpr std::uint64_t kStreamFading = 400;

} // namespace

RVec ofdm_isl_trials(std::size_t n_subcarriers, Modulation m, std::size_t trials, std::uint64_t seed,
                     std::uint64_t stream, std::size_t workers)
{
    ofdm::OfdmConfig cfg;
    cfg.n_subcarriers = n_subcarriers;
    cfg.modulation = m;
    cfg.validate();
    const auto alloc = ofdm::PowerAllocation::flat(n_subcarriers, 1.0);
    const int bps = constellation(m).bits_per_symbol;
    RVec out(trials);
    parallel_for(trials, workers, [&](std::size_t t) {
        Rng rng = make_rng(seed, stream, t);
        const auto bits = random_bits(n_subcarriers * static_cast<std::size_t>(bps), rng);
        const auto sym = ofdm::modulate_symbol(cfg, alloc, bits);
        out[t] = sensing::isl(sym, sensing::CorrMode::aperiodic);
    });
    return out;
}

RVec otfs_isl_trials(const OtfsSetup& setup, const otfs::PilotScheme& scheme, std::size_t trials,
                     std::uint64_t seed, std::size_t workers)
{
    const otfs::DdGrid empty(setup.M_tau, setup.N_nu, setup.E_s, setup.E_p);
    otfs::pilot_cells(empty, scheme); // validates before spawning work
    RVec out(trials);
    parallel_for(trials, workers, [&](std::size_t t) {
        Rng rng = make_rng(seed, kStreamOtfs, t);
        const auto grid = otfs::place_pilots(empty, scheme, rng);
        const auto x = otfs::synthesize_time(grid, setup.subcarrier_spacing);
        out[t] = sensing::isl(x, sensing::CorrMode::aperiodic);
    });
    return out;
}

RVec psl_trials(std::size_t n, std::size_t trials, std::uint64_t seed, std::size_t workers)
{
    RVec out(trials);
    parallel_for(trials, workers, [&](std::size_t t) {
        Rng rng = make_rng(seed, kStreamPsl + n, t);
        const auto bits = random_bits(n, rng);
        CVec x(n);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = bits[i] ? 1.0 : -1.0;
        out[t] = sensing::psl(x);
    });
    return out;
}

CrbPoint crb_monte_carlo(const CrbSetup& setup, double snr_db, std::size_t trials, std::uint64_t seed,
                         std::size_t workers)
{
    const std::size_t N = setup.n_subcarriers;
    const std::size_t L = N * setup.pad_factor;
    if (setup.pad_factor < 2 || setup.max_delay + static_cast<double>(N) > static_cast<double>(L))
        throw DomainError("delay range does not fit inside the padded reference");
    if (!(setup.min_delay >= 0.0 && setup.max_delay > setup.min_delay))
        throw DomainError("delay range must be nonempty and nonnegative");
    const double sigma2 = std::pow(10.0, -snr_db / 10.0);
    const double dt = setup.sample_period;

    RVec sq_err(trials), err(trials), crb(trials);
    parallel_for(trials, workers, [&](std::size_t t) {
        Rng rng = make_rng(seed, kStreamCrb, t);
        const CVec sym = random_symbols(N, Modulation::qpsk, rng);
        CVec ref(L, cplx{});
        const CVec body = idft(sym);
        std::copy(body.begin(), body.end(), ref.begin());

        std::uniform_real_distribution<double> ud(setup.min_delay, setup.max_delay);
        std::uniform_real_distribution<double> uphase(0.0, 2.0 * kPi);
        const double d = ud(rng);
        const cplx A = std::polar(1.0, uphase(rng));
        CVec y = sensing::delay_signal(ref, d);
        const CVec w = complex_gaussian(L, sigma2, rng);
        for (std::size_t k = 0; k < L; ++k)
            y[k] = A * y[k] + w[k];

        const double tau_hat = sensing::estimate_delay_mf(ComplexSequence(y, dt), ComplexSequence(ref, dt),
                                                          setup.upsample, true);
        const double e = kSpeedOfLight * (tau_hat - d * dt);
        err[t] = e;
        sq_err[t] = e * e;
        crb[t] = sensing::crb_ranging_mse(sensing::discrete_scenario(ref, dt, 1.0, sigma2));
    });

    CrbPoint p;
    p.snr_db = snr_db;
    p.trials = trials;
    double se = 0.0, s2 = 0.0, b = 0.0, c = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        se += sq_err[t];
        s2 += sq_err[t] * sq_err[t];
        b += err[t];
        c += crb[t];
    }
    const double k = static_cast<double>(trials);
    p.mse = se / k;
    p.mse_se = trials > 1 ? std::sqrt(std::max(0.0, (s2 - k * p.mse * p.mse) / (k - 1.0)) / k) : 0.0;
    p.crb = c / k;
    p.bias = b / k;
    p.ratio = p.mse / p.crb;
    return p;
}

RVec AllocPreset::gains(bool rayleigh, std::uint64_t seed) const
{
    return channel::make_notched_profile(N, notch_centers, notch_depth_db, notch_width, attenuation_db,
                                         rayleigh ? channel::FastFading::rayleigh : channel::FastFading::none,
                                         seed)
        .gain;
}

alloc::AllocProblem AllocPreset::problem(double alpha, const RVec& g) const
{
    alloc::AllocProblem p;
    p.gains = g;
    p.weights = alloc::omega_squared(N, bandwidth, carrier, absolute_frequency);
    p.alpha = alpha;
    p.P = mean_power();
    p.V0 = v0_scale * p.P * p.P;
    p.N0 = noise_psd;
    p.B = bandwidth;
    return p;
}

RVec AllocPreset::frequency_offsets() const
{
    RVec f(N);
    const double n = static_cast<double>(N);
    for (std::size_t i = 0; i < N; ++i)
        f[i] = (static_cast<double>(i) - (n - 1.0) / 2.0) * bandwidth / n;
    return f;
}

std::vector<std::vector<TradeoffSample>> tradeoff(const AllocPreset& preset, const std::vector<double>& alphas,
                                                  std::size_t trials, std::uint64_t seed, std::size_t workers)
{
    std::vector<std::vector<TradeoffSample>> out(alphas.size(), std::vector<TradeoffSample>(trials));
    const RVec freq = preset.frequency_offsets();
    parallel_for(trials, workers, [&](std::size_t t) {
        const RVec g = preset.gains(true, substream_seed(seed, kStreamFading, t));
        for (std::size_t a = 0; a < alphas.size(); ++a) {
            const auto p = preset.problem(alphas[a], g);
            const auto sol = alloc::two_stage(p);
            TradeoffSample& s = out[a][t];
            s.rms_bandwidth = sensing::rms_bandwidth(sol.X.power, freq);
            s.sum_rate = comm::sum_rate(sol.X, g, preset.noise_psd, preset.bandwidth);
            s.objective = sol.objective;
            s.projected = sol.projected;
        }
    });
    return out;
}

std::vector<CompareSample> solver_compare(const AllocPreset& preset, double alpha, std::size_t trials,
                                          std::uint64_t seed, std::size_t workers, int pg_steps)
{
    std::vector<CompareSample> out(trials);
    parallel_for(trials, workers, [&](std::size_t t) {
        const RVec g = preset.gains(true, substream_seed(seed, kStreamFading, t));
        const auto p = preset.problem(alpha, g);
        const auto two = alloc::two_stage(p);
        const auto pg = alloc::single_stage_pg(p, pg_steps);
        out[t] = {two.objective, pg.objective, pg.iterations, two.projected};
    });
    return out;
}

} // namespace isac::studies
