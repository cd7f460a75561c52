#pragma once

// Variance-constrained power allocation:
//
//   maximize    alpha * zeta * sum_n log2(1 + gamma_n X_n) + (1 - alpha) * sum_n w_n^2 X_n
//   subject to  sum_n X_n = N P,   X_n >= 0,   sum_n (X_n - P)^2 <= V0
//
// with gamma_n = |h_n|^2 N / (N0 B) and zeta = S_max / C_max, where
// S_max = N P max_n w_n^2 and C_max is the sum of log2 terms under classical
// water-filling.

#include "isac/ofdm.hpp"

#include <cstdint>
#include <vector>

namespace isac::alloc {

struct AllocProblem {
    RVec gains;    // |h_n|^2 > 0
    RVec weights;  // w_n^2 >= 0, (rad/s)^2
    double alpha = 0.5;
    double P = 1.0;  // mean power per subcarrier, W
    double V0 = 1.0; // W^2
    double N0 = 1.0; // W/Hz
    double B = 1.0;  // Hz

    std::size_t N() const noexcept { return gains.size(); }
    double gamma(std::size_t n) const noexcept;
    void validate() const;
};

struct AllocSolution {
    ofdm::PowerAllocation X;
    double objective = 0.0;
    ofdm::PowerAllocation stage1_X;
    bool projected = false;
    double lambda = 0.0;
    double zeta = 0.0;
    int iterations = 0;         // bisection steps (or gradient steps)
    int bracket_iterations = 0; // halvings needed to bracket lambda
};

// w_n^2 with w_n = 2 pi (f_n - f_c) and f_n - f_c = (n - (N-1)/2) B / N.
// With absolute = true the carrier is added back: w_n = 2 pi (f_c + offset).
RVec omega_squared(std::size_t n, double bandwidth, double carrier = 0.0, bool absolute = false);

double zeta(const AllocProblem& p);

double objective(const AllocProblem& p, std::span<const double> X, double zeta);

// Stage 1. X_n(lambda) = [ alpha zeta / (ln2 ((1-alpha)(wmax^2 - w_n^2) + lambda)) - 1/gamma_n ]_+
// for lambda > 0, whose total is strictly decreasing in lambda. The bracket
// starts at the all-zero point lambda = alpha zeta gamma_max / ln2 and is
// halved until the total reaches N P; bisection then runs until the bracket
// width is eps times its initial width, and the remaining power residual is
// spread over the active subcarriers. alpha = 0 returns the corner solution
// (all power on argmax w^2, ties split).
struct Stage1Result {
    ofdm::PowerAllocation X;
    double lambda = 0.0;
    int iterations = 0;
    int bracket_iterations = 0;
};
Stage1Result stage1_waterfill(const AllocProblem& p, double zeta, double eps = 1e-12);

// Stage 2. Returns X unchanged when sum (X - P)^2 <= V0 (projected = false),
// else the radial shrink P + s (X - P) onto the variance sphere, falling back
// to the exact Euclidean projection when the shrink leaves the orthant.
struct Stage2Result {
    ofdm::PowerAllocation X;
    bool projected = false;
};
Stage2Result stage2_project(const ofdm::PowerAllocation& X_star, double P, double V0);

// Euclidean projection of y onto {sum X = N P, X >= 0, sum (X - P)^2 <= V0}.
RVec project_feasible(std::span<const double> y, double P, double V0);

// Euclidean projection onto {sum X = total, X >= 0}.
RVec project_simplex(std::span<const double> y, double total);

AllocSolution two_stage(const AllocProblem& p, double eps = 1e-12);

// Exact water level by sorting 1/gamma_n. eps bounds the spread of
// X_n + 1/gamma_n over active subcarriers relative to the level; a larger
// spread throws ConvergenceError.
ofdm::PowerAllocation classical_waterfill(std::span<const double> gains, double N0, double B, double P,
                                          double eps = 1e-9);

// Projected gradient ascent from P * 1 with Armijo backtracking. A
// nonpositive step_size starts from P / max|grad|. Stops after `steps`
// gradient steps or when the relative objective gain stalls below 1e-13.
AllocSolution single_stage_pg(const AllocProblem& p, int steps = 2000, double step_size = 0.0);

// Exhaustive search over X_n = j_n 2P/(L-1), j_n in {0..L-1}, sum j_n =
// N (L-1) / 2. Requires N <= 8, 2 <= L <= 16 and N (L-1) even.
AllocSolution exhaustive_oracle(const AllocProblem& p, int levels);

} // namespace isac::alloc
