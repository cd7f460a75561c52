#include "isac/error.hpp"
#include "isac/ofdm.hpp"
#include "isac/random.hpp"
#include "isac/sensing.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace isac;
using namespace isac::sensing;

TEST(Isl, HandValues)
{
    const CVec x{1, 1};
    EXPECT_DOUBLE_EQ(isl(x, CorrMode::aperiodic), 0.25);
    EXPECT_DOUBLE_EQ(isl(x, CorrMode::aperiodic_two_sided), 0.5);
    EXPECT_THROW(isl(CVec{1}), DimensionError);
    EXPECT_THROW(isl(CVec{0, 0}), DomainError);
}

TEST(Isl, MatchesDirectSum)
{
    Rng rng(1);
    const CVec x = random_symbols(1024, Modulation::qpsk, rng);
    EXPECT_NEAR(isl(x), oracle::isl(x), 1e-10);
}

TEST(Isl, CircularZeroIffFlatPsd)
{
    Rng rng(2);
    const CVec flat = idft(random_symbols(256, Modulation::qpsk, rng));
    EXPECT_LT(isl(flat, CorrMode::circular), 1e-20);
    const CVec bumpy = idft(random_symbols(256, Modulation::qam16, rng));
    EXPECT_GT(isl(bumpy, CorrMode::circular), 1e-3);
}

TEST(Isl, FlatAllocationBeatsPerturbedAllocations)
{
    // Fixed total power: any non-flat PSD has strictly positive circular ISL.
    const std::size_t n = 128;
    Rng rng(3);
    const CVec phases = random_symbols(n, Modulation::qpsk, rng);
    const double flat = isl(idft(phases), CorrMode::circular);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    for (int t = 0; t < 100; ++t) {
        RVec p(n);
        double s = 0.0;
        for (auto& v : p)
            s += (v = u(rng));
        CVec X(n);
        for (std::size_t k = 0; k < n; ++k)
            X[k] = phases[k] * std::sqrt(p[k] * static_cast<double>(n) / s);
        EXPECT_GT(isl(idft(X), CorrMode::circular), flat);
    }
}

TEST(Psl, HandAndBarker)
{
    EXPECT_DOUBLE_EQ(psl(CVec{1, 1}), 0.5);
    CVec b;
    for (double v : oracle::barker13())
        b.emplace_back(v, 0.0);
    EXPECT_NEAR(psl(b), 1.0 / 13.0, 1e-14);
}

TEST(IslGap, ShrinksWithLength)
{
    const auto rows = isl_gap_curve({64, 256, 1024}, 100, Modulation::qpsk, 5);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_GT(rows[0].mean_rel_error, rows[1].mean_rel_error);
    EXPECT_GT(rows[1].mean_rel_error, rows[2].mean_rel_error);
    for (const auto& r : rows) {
        EXPECT_EQ(r.trials, 100u);
        EXPECT_GT(r.mean_isl_circular, 0.0);
    }
    const auto again = isl_gap_curve({64, 256, 1024}, 100, Modulation::qpsk, 5);
    EXPECT_EQ(again[1].mean_rel_error, rows[1].mean_rel_error);
}

TEST(Fisher, FlatClosedForm)
{
    const double A = 0.7, wc = 2 * kPi * 3e9, W = 2 * kPi * 1e9, N0 = 1e-18, P0 = 2e-9;
    const auto s = flat_scenario(A, wc, W, N0, P0, 4096);
    const double I = fisher_info(s);
    const double closed = A * A * P0 * (wc * wc * W + W * W * W / 12.0) / (N0 * W);
    EXPECT_NEAR(I / closed, 1.0, 1e-6);
    EXPECT_NEAR(fisher_info_flat(A, wc, W, N0, P0) / closed, 1.0, 1e-14);
    EXPECT_NEAR(crb_ranging_mse(s) * I, kSpeedOfLight * kSpeedOfLight, 1e-6 * kSpeedOfLight * kSpeedOfLight);
    EXPECT_NEAR(fisher_info(flat_scenario(2 * A, wc, W, N0, P0)) / fisher_info(flat_scenario(A, wc, W, N0, P0)),
                4.0, 1e-12);
}

TEST(Fisher, EdgeConcentratedPsd)
{
    // All mass in the last trapezoid panel at w = wc + W/2.
    const double A = 1.0, wc = 10.0, W = 4.0, N0 = 0.5;
    auto s = flat_scenario(A, wc, W, N0, 0.0, 4001);
    s.psd.back() = 1.0;
    const double h = s.omega[1] - s.omega[0];
    const double mass = 0.5 * h;
    const double w = wc + W / 2;
    EXPECT_NEAR(fisher_info(s), A * A * w * w * mass / (N0 * W), 1e-12);
}

TEST(Crb, ClosedFormAndScaling)
{
    const double A = 1.0, N0 = 1e-18, P0 = 1e-9, beta = 2.0;
    const double W = 2 * kPi * 1e9;
    const double c1 = crb_ranging_mse(flat_scenario(A, beta * W, W, N0, P0));
    EXPECT_NEAR(c1 / crb_flat(A, beta * W, W, N0, P0), 1.0, 1e-6);
    const double c_half = crb_ranging_mse(flat_scenario(A, beta * W / 2, W / 2, N0, P0));
    EXPECT_NEAR(c_half / c1, 4.0, 1e-6);
    auto s = flat_scenario(A, beta * W, W, N0, 3 * P0);
    EXPECT_NEAR(crb_ranging_mse(s) / c1, 1.0 / 3.0, 1e-9);
    s.psd.assign(s.psd.size(), 0.0);
    EXPECT_THROW(crb_ranging_mse(s), DomainError);
}

TEST(SensingSe, ClosedFormInvariantInW)
{
    const double A = 0.3, N0 = 1e-18, P0 = 1e-9, beta = 1.5;
    const double expect = sensing_se_flat(A, beta, N0, P0);
    EXPECT_NEAR(expect, A * std::sqrt(P0 * (beta * beta + 1.0 / 12.0)) / (kSpeedOfLight * std::sqrt(N0)), 1e-18);
    for (double f : {1e8, 1e9, 4e9}) {
        const double W = 2 * kPi * f;
        EXPECT_NEAR(sensing_se(flat_scenario(A, beta * W, W, N0, P0)) / expect, 1.0, 1e-6);
    }
    EXPECT_NEAR(sensing_se_flat(A, 0.0, N0, P0), A * std::sqrt(P0 / 12.0) / (kSpeedOfLight * std::sqrt(N0)), 1e-18);
}

TEST(Discrete, FisherMatchesSampleSum)
{
    Rng rng(4);
    const std::size_t L = 256;
    const double dt = 1e-9, sigma2 = 0.01;
    CVec x = idft(random_symbols(L, Modulation::qpsk, rng));
    const auto s = discrete_scenario(x, dt, 1.0, sigma2);
    const CVec X = dft(x);
    double sum = 0.0;
    for (std::size_t k = 0; k < L; ++k) {
        const double f = 2 * k < L ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(L);
        const double w = 2 * kPi * f / (static_cast<double>(L) * dt);
        sum += w * w * std::norm(X[k]);
    }
    // Trapezoid halves the two end samples; with a flat PSD that is a
    // relative change of O(1/L).
    EXPECT_NEAR(fisher_info(s) / (2.0 / sigma2 * sum), 1.0, 5.0 / static_cast<double>(L));
}

TEST(RmsBandwidth, FlatEdgeAndLoaded)
{
    const std::size_t n = 1024;
    const double B = 1e9;
    RVec f(n), flat(n, 1.0), edge(n, 0.0), loaded(n);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = -B / 2 + B * static_cast<double>(i) / static_cast<double>(n - 1);
        loaded[i] = 0.5 + std::pow(2.0 * f[i] / B, 2.0);
    }
    EXPECT_NEAR(rms_bandwidth(flat, f) / (B / std::sqrt(12.0)), 1.0, 1e-5);
    edge.front() = edge.back() = 1.0;
    EXPECT_NEAR(rms_bandwidth(edge, f), B / 2, 1e-3);
    EXPECT_GT(rms_bandwidth(loaded, f), rms_bandwidth(flat, f));
    EXPECT_THROW(rms_bandwidth(RVec(n, 0.0), f), DomainError);
}

TEST(DelayEstimate, IntegerAndFractional)
{
    Rng rng(6);
    const double dt = 1e-9;
    const CVec ref = idft(random_symbols(128, Modulation::qpsk, rng));
    CVec padded(ref);
    padded.resize(256);
    for (double d : {0.0, 7.0, 10.1, 10.25, 50.37, 99.5}) {
        const CVec y = delay_signal(padded, d);
        const double est = estimate_delay_mf(ComplexSequence(y, dt), ComplexSequence(padded, dt), 4, true);
        EXPECT_NEAR(est / dt, d, 1e-9) << d;
    }
    CVec lin(200);
    for (std::size_t k = 0; k < ref.size(); ++k)
        lin[k + 7] = ref[k];
    EXPECT_NEAR(estimate_delay_mf(ComplexSequence(lin, dt), ComplexSequence(ref, dt)), 7 * dt, 1e-15);
    EXPECT_NEAR(estimate_delay_mf(ComplexSequence(ref, dt), ComplexSequence(ref, dt)), 0.0, 1e-15);
    EXPECT_THROW(estimate_delay_mf(ComplexSequence(ref, dt), ComplexSequence(lin, dt)), DimensionError);
}

TEST(DelaySignal, IntegerShiftIsRotation)
{
    Rng rng(8);
    const CVec x = random_symbols(64, Modulation::qpsk, rng);
    const CVec y = delay_signal(x, 5.0);
    for (std::size_t k = 0; k < 64; ++k)
        EXPECT_NEAR(std::abs(y[(k + 5) % 64] - x[k]), 0.0, 1e-12);
}

TEST(Imaging, MatchesTraceOracle)
{
    for (auto [k1, k2] : {std::pair<long, long>{280, 281}, {280, 284}, {10, 17}}) {
        ImagingParams p{k1, k2, 3, 4, 0.05, 0.02};
        EXPECT_NEAR(imaging_snr(p) / oracle::imaging_snr(k1, k2, 3, 4, 0.05, 0.02), 1.0, 1e-10);
    }
}

TEST(Imaging, DegenerateCases)
{
    ImagingParams p{0, 5, 4, 4, 0.1, 0.0};
    const double dim = 4.0 * 9.0;
    EXPECT_NEAR(imaging_snr(p), dim * dim, 1e-8);
    p.k2 = 0;
    EXPECT_THROW(imaging_snr(p), DomainError);
    EXPECT_THROW(imaging_snr(ImagingParams{0, 1, 40, 8, 1.0, 1.0}), SizeError);
}

TEST(Imaging, DoublingRatioApproachesOne)
{
    // Physical setting: 28 GHz carrier, 100 MHz step.
    const double c = kSpeedOfLight, fc = 28e9, df = 100e6;
    const long k1 = 280;
    auto at = [&](long span) { return imaging_snr({k1, k1 + span, 4, 4, c / (2 * fc), df / c}); };
    for (long span : {2L, 8L, 32L})
        EXPECT_LT(std::abs(at(2 * span) / at(span) - 1.0), 1e-3) << span;
}
