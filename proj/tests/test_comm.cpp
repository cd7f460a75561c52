#include "isac/comm.hpp"
#include "isac/error.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace isac;
using namespace isac::comm;

TEST(GaussianSe, Values)
{
    EXPECT_DOUBLE_EQ(gaussian_se(0.0), 0.0);
    EXPECT_DOUBLE_EQ(gaussian_se(1.0), 1.0);
    EXPECT_DOUBLE_EQ(gaussian_se(3.0), 2.0);
    EXPECT_THROW(gaussian_se(-1.0), DomainError);
}

TEST(QpskMi, LimitsAndSlope)
{
    EXPECT_NEAR(qpsk_mi(0.0), 0.0, 1e-15);
    EXPECT_NEAR(qpsk_mi(100.0), 2.0, 1e-3);
    EXPECT_LE(qpsk_mi(100.0), 2.0);
    EXPECT_NEAR(qpsk_mi(1e-3) / (1e-3 * std::log2(std::exp(1.0))), 1.0, 0.01);
}

TEST(QpskMi, MatchesMonteCarlo)
{
    std::uint64_t seed = 100;
    for (double snr_db : {-10.0, -3.0, 0.0, 3.0, 6.0, 10.0}) {
        const double snr = std::pow(10.0, snr_db / 10.0);
        const auto mc = oracle::qpsk_mi_mc(snr, 200000, seed++);
        EXPECT_NEAR(qpsk_mi(snr), mc.mean, 3.0 * mc.se + 1e-12) << snr_db;
    }
}

TEST(QpskMi, BoundedMonotoneConcave)
{
    double prev = 0.0, prev_slope = 1e300;
    for (int i = 1; i <= 200; ++i) {
        const double snr = 0.05 * i;
        const double v = qpsk_mi(snr);
        EXPECT_LE(v, std::min(2.0, gaussian_se(snr)) + 1e-12);
        EXPECT_GT(v, prev);
        const double slope = (v - prev) / 0.05;
        if (i > 1) {
            EXPECT_LT(slope, prev_slope + 1e-9);
        }
        prev_slope = slope;
        prev = v;
    }
}

TEST(SumRate, Basics)
{
    const double N0 = 1e-18, B = 2e6;
    const RVec g{1.0, 1.0};
    EXPECT_DOUBLE_EQ(sum_rate(ofdm::PowerAllocation::flat(2, 0.0), g, N0, B), 0.0);
    const double P = 3e-12;
    const double snr = P / (N0 * B / 2);
    EXPECT_NEAR(sum_rate(ofdm::PowerAllocation::flat(2, P), g, N0, B), 2 * (B / 2) * std::log2(1 + snr), 1e-6);
    EXPECT_NEAR(sum_rate_bits(ofdm::PowerAllocation::flat(2, P), g, N0, B), 2 * std::log2(1 + snr), 1e-12);
}

TEST(LinkBudget, SnrFromPathloss)
{
    LinkBudget b;
    b.distance = 100.0;
    b.bandwidth = 500e6;
    EXPECT_NEAR(b.pathloss_db(), 55.6, 1e-12);
    EXPECT_NEAR(b.snr(), 0.2 * std::pow(10.0, -5.56) / (1e-18 * 500e6), 1e-6);
    b.distance = -1.0;
    EXPECT_THROW(b.validate(), DomainError);
}

TEST(SeVsDistance, Ordering)
{
    LinkBudget base;
    std::vector<double> d;
    for (double x = 50; x <= 350; x += 25)
        d.push_back(x);
    const auto rows = se_vs_distance(base, d, {500e6, 4e9});
    ASSERT_EQ(rows.size(), 2 * d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto& lo = rows[i];
        const auto& hi = rows[d.size() + i];
        EXPECT_EQ(lo.bandwidth, 500e6);
        EXPECT_EQ(hi.bandwidth, 4e9);
        EXPECT_LT(hi.rel_gap, lo.rel_gap);
        EXPECT_GT(lo.gaussian_se, hi.gaussian_se);
        EXPECT_GE(lo.gaussian_se, lo.qpsk_se);
        EXPECT_GE(hi.gaussian_se, hi.qpsk_se);
        EXPECT_NEAR(lo.gaussian_rate, lo.gaussian_se * 500e6, 1e-3);
    }
}

TEST(RelativeGap, MonotoneInSnr)
{
    EXPECT_EQ(relative_gap(0.0), 0.0);
    double prev = 0.0;
    for (double db = -30; db <= 40; db += 0.5) {
        const double g = relative_gap(std::pow(10.0, db / 10.0));
        EXPECT_GT(g, prev);
        prev = g;
    }
}

TEST(GapRegion, NestedInTolerance)
{
    LinkBudget base;
    const std::vector<double> powers{0.01, 0.05, 0.2};
    const std::vector<double> dist{50, 200, 350};
    std::vector<double> bw;
    for (int i = 0; i <= 60; ++i)
        bw.push_back(1e8 * std::pow(10.0, i / 20.0));
    const auto tight = gap_region(base, powers, dist, bw, 1e-4);
    const auto loose = gap_region(base, powers, dist, bw, 1e-2);
    ASSERT_EQ(tight.size(), 9u);
    for (std::size_t i = 0; i < tight.size(); ++i) {
        if (tight[i].feasible) {
            ASSERT_TRUE(loose[i].feasible);
            EXPECT_LE(loose[i].min_bandwidth, tight[i].min_bandwidth);
            EXPECT_LE(tight[i].gap_at_min, 1e-4);
        } else {
            EXPECT_EQ(tight[i].min_bandwidth, 0.0);
        }
    }
    // Lower power and longer distance need less bandwidth.
    EXPECT_TRUE(loose.front().feasible);
}
