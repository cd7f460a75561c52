#pragma once

#include "isac/random.hpp"

#include <span>
#include <vector>

namespace isac::stats {

double mean(std::span<const double> x);
// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double stddev(std::span<const double> x);
double std_error(std::span<const double> x);
double median(std::span<const double> x);
// Linear interpolation between order statistics, q in [0, 1].
double quantile(std::span<const double> x, double q);

// Standard deviation of the sample median over `resamples` bootstrap draws.
double bootstrap_se_median(std::span<const double> x, std::size_t resamples, Rng& rng);

// Bootstrap of median(b) - median(a) resampling trial indices jointly.
struct PairedDiff {
    double estimate = 0.0;
    double se = 0.0;
    double lo95 = 0.0;
    double hi95 = 0.0;
};
PairedDiff paired_bootstrap_median_diff(std::span<const double> a, std::span<const double> b,
                                        std::size_t resamples, Rng& rng);
PairedDiff paired_bootstrap_mean_diff(std::span<const double> a, std::span<const double> b,
                                      std::size_t resamples, Rng& rng);

// Ordinary least squares y = a + b x.
struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    double r2 = 0.0;
};
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

// Empirical CDF: sorted values with probabilities (i + 1) / n.
struct Ecdf {
    std::vector<double> values;
    std::vector<double> prob;
};
Ecdf ecdf(std::span<const double> x);

} // namespace isac::stats
