#include "isac/stats.hpp"

#include "isac/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace isac::stats {

double mean(std::span<const double> x)
{
    if (x.empty())
        throw DimensionError("mean of an empty sample");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double stddev(std::span<const double> x)
{
    if (x.size() < 2)
        return 0.0;
    const double m = mean(x);
    double s = 0.0;
    for (double v : x)
        s += (v - m) * (v - m);
    return std::sqrt(s / static_cast<double>(x.size() - 1));
}

double std_error(std::span<const double> x)
{
    return x.empty() ? 0.0 : stddev(x) / std::sqrt(static_cast<double>(x.size()));
}

double quantile(std::span<const double> x, double q)
{
    if (x.empty())
        throw DimensionError("quantile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0))
        throw DomainError("quantile level must lie in [0, 1]");
    std::vector<double> s(x.begin(), x.end());
    std::sort(s.begin(), s.end());
    const double pos = q * static_cast<double>(s.size() - 1);
    const auto i = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(i);
    if (i + 1 >= s.size())
        return s.back();
    return s[i] + frac * (s[i + 1] - s[i]);
}

double median(std::span<const double> x) { return quantile(x, 0.5); }

namespace {

template <class Stat>
PairedDiff paired_bootstrap(std::span<const double> a, std::span<const double> b, std::size_t resamples,
                            Rng& rng, Stat stat)
{
    if (a.size() != b.size() || a.empty())
        throw DimensionError("paired bootstrap needs two nonempty samples of equal size");
    if (resamples < 2)
        throw DomainError("bootstrap needs at least two resamples");
    const std::size_t n = a.size();
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<double> ra(n), rb(n), diffs(resamples);
    for (std::size_t r = 0; r < resamples; ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t k = pick(rng);
            ra[i] = a[k];
            rb[i] = b[k];
        }
        diffs[r] = stat(rb) - stat(ra);
    }
    PairedDiff d;
    d.estimate = stat(b) - stat(a);
    d.se = stddev(diffs);
    d.lo95 = quantile(diffs, 0.025);
    d.hi95 = quantile(diffs, 0.975);
    return d;
}

} // namespace

double bootstrap_se_median(std::span<const double> x, std::size_t resamples, Rng& rng)
{
    if (x.empty())
        throw DimensionError("bootstrap of an empty sample");
    if (resamples < 2)
        throw DomainError("bootstrap needs at least two resamples");
    std::uniform_int_distribution<std::size_t> pick(0, x.size() - 1);
    std::vector<double> r(x.size()), meds(resamples);
    for (std::size_t b = 0; b < resamples; ++b) {
        for (auto& v : r)
            v = x[pick(rng)];
        meds[b] = median(r);
    }
    return stddev(meds);
}

PairedDiff paired_bootstrap_median_diff(std::span<const double> a, std::span<const double> b,
                                        std::size_t resamples, Rng& rng)
{
    return paired_bootstrap(a, b, resamples, rng, [](std::span<const double> v) { return median(v); });
}

PairedDiff paired_bootstrap_mean_diff(std::span<const double> a, std::span<const double> b,
                                      std::size_t resamples, Rng& rng)
{
    return paired_bootstrap(a, b, resamples, rng, [](std::span<const double> v) { return mean(v); });
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw DimensionError("linear fit needs at least two paired points");
    const double mx = mean(x), my = mean(y);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0))
        throw DomainError("linear fit needs distinct x values");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

Ecdf ecdf(std::span<const double> x)
{
    Ecdf e;
    e.values.assign(x.begin(), x.end());
    std::sort(e.values.begin(), e.values.end());
    e.prob.resize(e.values.size());
    for (std::size_t i = 0; i < e.values.size(); ++i)
        e.prob[i] = static_cast<double>(i + 1) / static_cast<double>(e.values.size());
    return e;
}

} // namespace isac::stats
