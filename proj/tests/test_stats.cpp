#include "isac/stats.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace isac;
using namespace isac::stats;

TEST(Stats, Moments)
{
    const RVec x{1, 2, 3, 4};
    EXPECT_DOUBLE_EQ(mean(x), 2.5);
    EXPECT_NEAR(stddev(x), std::sqrt(5.0 / 3.0), 1e-15);
    EXPECT_NEAR(std_error(x), std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
    EXPECT_DOUBLE_EQ(median(x), 2.5);
    EXPECT_DOUBLE_EQ(median(RVec{5, 1, 3}), 3.0);
    EXPECT_DOUBLE_EQ(quantile(x, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(quantile(x, 1.0), 4.0);
    EXPECT_DOUBLE_EQ(quantile(x, 0.5), 2.5);
    EXPECT_EQ(stddev(RVec{1.0}), 0.0);
}

// Exact bootstrap SD of the median for odd n: the resampled median is the
// order statistic x_(k) with P(med <= x_(k)) = P(Bin(n, k/n) >= (n+1)/2).
static double exact_bootstrap_median_sd(RVec x)
{
    std::sort(x.begin(), x.end());
    const int n = static_cast<int>(x.size());
    const int half = (n + 1) / 2;
    double m1 = 0.0, m2 = 0.0, prev = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double p = static_cast<double>(k) / n;
        double tail = 0.0;
        for (int j = half; j <= n; ++j) {
            const double lg = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
            tail += k == n ? (j == n ? 1.0 : 0.0) : std::exp(lg + j * std::log(p) + (n - j) * std::log1p(-p));
        }
        const double w = tail - prev;
        prev = tail;
        m1 += w * x[static_cast<std::size_t>(k - 1)];
        m2 += w * x[static_cast<std::size_t>(k - 1)] * x[static_cast<std::size_t>(k - 1)];
    }
    return std::sqrt(m2 - m1 * m1);
}

TEST(Stats, BootstrapMedianSe)
{
    Rng rng(1);
    std::normal_distribution<double> g(0.0, 2.0);
    RVec x(2001);
    for (auto& v : x)
        v = g(rng);
    Rng b(2);
    const double se = bootstrap_se_median(x, 1000, b);
    EXPECT_NEAR(se / exact_bootstrap_median_sd(x), 1.0, 0.1);
}

TEST(Stats, PairedBootstrap)
{
    Rng rng(3);
    std::normal_distribution<double> g(0.0, 1.0);
    RVec a(1000), b(1000);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = g(rng);
        b[i] = a[i] + 0.1 + 0.01 * g(rng);
    }
    Rng r(4);
    const auto d = paired_bootstrap_mean_diff(a, b, 500, r);
    EXPECT_NEAR(d.estimate, 0.1, 0.002);
    EXPECT_LT(d.se, 0.002);
    EXPECT_LT(d.lo95, d.estimate);
    EXPECT_GT(d.hi95, d.estimate);
    EXPECT_GT(d.lo95, 0.0);
    const auto m = paired_bootstrap_median_diff(a, b, 500, r);
    EXPECT_NEAR(m.estimate, 0.1, 0.01);
}

TEST(Stats, LinearFitAndEcdf)
{
    const RVec x{0, 1, 2, 3};
    const RVec y{1, 3, 5, 7};
    const auto f = linear_fit(x, y);
    EXPECT_NEAR(f.slope, 2.0, 1e-14);
    EXPECT_NEAR(f.intercept, 1.0, 1e-14);
    EXPECT_NEAR(f.r2, 1.0, 1e-14);
    const auto e = ecdf(RVec{3, 1, 2});
    EXPECT_EQ(e.values, (RVec{1, 2, 3}));
    EXPECT_NEAR(e.prob[0], 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(e.prob[2], 1.0, 1e-15);
}
