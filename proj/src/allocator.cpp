#include "isac/allocator.hpp"

#include "isac/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace isac::alloc {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

double variance_sum(std::span<const double> x, double P)
{
    double v = 0.0;
    for (double xi : x)
        v += (xi - P) * (xi - P);
    return v;
}

double total(std::span<const double> x) { return std::accumulate(x.begin(), x.end(), 0.0); }

} // namespace

double AllocProblem::gamma(std::size_t n) const noexcept
{
    return gains[n] * static_cast<double>(N()) / (N0 * B);
}

void AllocProblem::validate() const
{
    if (gains.empty())
        throw DimensionError("allocation problem needs at least one subcarrier");
    if (weights.size() != gains.size())
        throw DimensionError("weights and gains differ in length");
    for (double g : gains)
        if (!(g > 0.0) || !std::isfinite(g))
            throw DomainError("channel gains must be positive and finite");
    for (double w : weights)
        if (!(w >= 0.0) || !std::isfinite(w))
            throw DomainError("sensing weights must be nonnegative and finite");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw DomainError("alpha must lie in [0, 1]");
    if (!(P > 0.0) || !(V0 >= 0.0) || !(N0 > 0.0) || !(B > 0.0))
        throw DomainError("P, N0 and B must be positive and V0 nonnegative");
}

RVec omega_squared(std::size_t n, double bandwidth, double carrier, bool absolute)
{
    RVec w(n);
    const double nd = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        double f = (static_cast<double>(i) - (nd - 1.0) / 2.0) * bandwidth / nd;
        if (absolute)
            f += carrier;
        const double om = 2.0 * kPi * f;
        w[i] = om * om;
    }
    return w;
}

ofdm::PowerAllocation classical_waterfill(std::span<const double> gains, double N0, double B, double P,
                                          double eps)
{
    const std::size_t N = gains.size();
    if (N == 0)
        throw DimensionError("water-filling needs at least one subcarrier");
    if (!(N0 > 0.0) || !(B > 0.0) || !(P > 0.0))
        throw DomainError("N0, B and P must be positive");
    RVec inv(N);
    for (std::size_t n = 0; n < N; ++n) {
        if (!(gains[n] > 0.0))
            throw DomainError("channel gains must be positive");
        inv[n] = N0 * B / (gains[n] * static_cast<double>(N));
    }
    RVec sorted = inv;
    std::sort(sorted.begin(), sorted.end());

    const double budget = static_cast<double>(N) * P;
    double level = 0.0, acc = 0.0;
    for (std::size_t k = 1; k <= N; ++k) {
        acc += sorted[k - 1];
        level = (budget + acc) / static_cast<double>(k);
        if (k == N || level <= sorted[k])
            break;
    }

    ofdm::PowerAllocation out{RVec(N), P};
    for (std::size_t n = 0; n < N; ++n)
        out.power[n] = std::max(level - inv[n], 0.0);

    for (std::size_t n = 0; n < N; ++n) {
        if (out.power[n] > 0.0 && std::abs(out.power[n] + inv[n] - level) > eps * level)
            throw ConvergenceError("water-filling KKT residual exceeds tolerance");
        if (out.power[n] == 0.0 && inv[n] < level * (1.0 - eps))
            throw ConvergenceError("inactive subcarrier lies below the water level");
    }
    return out;
}

double zeta(const AllocProblem& p)
{
    p.validate();
    const double wmax = *std::max_element(p.weights.begin(), p.weights.end());
    const double s_max = static_cast<double>(p.N()) * p.P * wmax;
    const auto wf = classical_waterfill(p.gains, p.N0, p.B, p.P);
    double c_max = 0.0;
    for (std::size_t n = 0; n < p.N(); ++n)
        c_max += std::log2(1.0 + p.gamma(n) * wf.power[n]);
    if (!(c_max > 0.0))
        throw DomainError("maximum sum rate is zero, zeta undefined");
    return s_max / c_max;
}

double objective(const AllocProblem& p, std::span<const double> X, double z)
{
    if (X.size() != p.N())
        throw DimensionError("allocation length does not match problem size");
    double c = 0.0, s = 0.0;
    for (std::size_t n = 0; n < p.N(); ++n) {
        c += std::log2(1.0 + p.gamma(n) * X[n]);
        s += p.weights[n] * X[n];
    }
    return p.alpha * z * c + (1.0 - p.alpha) * s;
}

namespace {

// Adds the power residual equally to the active set, clipping any entry that
// goes negative, until the total matches.
void spread_residual(RVec& X, double target)
{
    for (std::size_t round = 0; round <= X.size(); ++round) {
        std::size_t active = 0;
        for (double x : X)
            active += x > 0.0;
        if (active == 0)
            return;
        const double r = (target - total(X)) / static_cast<double>(active);
        bool clipped = false;
        for (double& x : X) {
            if (x > 0.0) {
                x += r;
                if (x < 0.0) {
                    x = 0.0;
                    clipped = true;
                }
            }
        }
        if (!clipped)
            return;
    }
}

} // namespace

Stage1Result stage1_waterfill(const AllocProblem& p, double z, double eps)
{
    p.validate();
    if (!(eps > 0.0 && eps < 1.0))
        throw DomainError("eps must lie in (0, 1)");
    const std::size_t N = p.N();
    const double target = static_cast<double>(N) * p.P;
    const double wmax = *std::max_element(p.weights.begin(), p.weights.end());
    Stage1Result res;
    res.X = ofdm::PowerAllocation{RVec(N, 0.0), p.P};

    if (p.alpha == 0.0) {
        std::vector<std::size_t> top;
        for (std::size_t n = 0; n < N; ++n)
            if (p.weights[n] >= wmax * (1.0 - 1e-12))
                top.push_back(n);
        for (std::size_t n : top)
            res.X.power[n] = target / static_cast<double>(top.size());
        return res;
    }
    if (!(z > 0.0) || !std::isfinite(z))
        throw DomainError("zeta must be positive and finite");

    RVec inv(N), offset(N);
    double gmax = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
        inv[n] = 1.0 / p.gamma(n);
        offset[n] = (1.0 - p.alpha) * (wmax - p.weights[n]);
        gmax = std::max(gmax, p.gamma(n));
    }
    const double num = p.alpha * z / kLn2;
    auto fill = [&](double lambda, RVec& X) {
        double s = 0.0;
        for (std::size_t n = 0; n < N; ++n) {
            X[n] = std::max(num / (offset[n] + lambda) - inv[n], 0.0);
            s += X[n];
        }
        return s;
    };

    RVec X(N);
    double hi = num * gmax; // every subcarrier at zero power
    double lo = hi;
    constexpr int kMaxBracket = 4000;
    for (;;) {
        lo *= 0.5;
        ++res.bracket_iterations;
        if (fill(lo, X) >= target)
            break;
        hi = lo;
        if (res.bracket_iterations >= kMaxBracket || !(lo > 0.0))
            throw ConvergenceError("could not bracket the multiplier (check zeta and weight scaling)");
    }

    const double stop = eps * (hi - lo);
    constexpr int kMaxBisect = 2000;
    while (hi - lo > stop) {
        const double mid = 0.5 * (lo + hi);
        if (fill(mid, X) >= target)
            lo = mid;
        else
            hi = mid;
        if (++res.iterations > kMaxBisect)
            throw ConvergenceError("bisection did not converge");
    }
    res.lambda = 0.5 * (lo + hi);
    fill(res.lambda, X);
    spread_residual(X, target);
    res.X.power = std::move(X);
    return res;
}

// ---- projections ------------------------------------------------------------

namespace {

// Simplex projection threshold for z_i = (1 - t) y_i + t P, with `order`
// sorting y descending (the same order sorts z for t < 1).
double simplex_threshold(std::span<const double> y, const std::vector<std::size_t>& order, double t, double P,
                         double target)
{
    double acc = 0.0, theta = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const double u = (1.0 - t) * y[order[k]] + t * P;
        acc += u;
        const double th = (acc - target) / static_cast<double>(k + 1);
        if (u - th > 0.0)
            theta = th;
        else
            break;
    }
    return theta;
}

RVec simplex_at(std::span<const double> y, const std::vector<std::size_t>& order, double t, double P,
                double target)
{
    const double theta = simplex_threshold(y, order, t, P, target);
    RVec x(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        x[i] = std::max((1.0 - t) * y[i] + t * P - theta, 0.0);
    return x;
}

std::vector<std::size_t> descending_order(std::span<const double> y)
{
    std::vector<std::size_t> order(y.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return y[a] > y[b]; });
    return order;
}

} // namespace

RVec project_simplex(std::span<const double> y, double target)
{
    if (y.empty())
        throw DimensionError("cannot project an empty vector");
    if (target < 0.0)
        throw DomainError("simplex total must be nonnegative");
    return simplex_at(y, descending_order(y), 0.0, 0.0, target);
}

RVec project_feasible(std::span<const double> y, double P, double V0)
{
    const std::size_t N = y.size();
    if (N == 0)
        throw DimensionError("cannot project an empty vector");
    if (!(P > 0.0) || !(V0 >= 0.0))
        throw DomainError("P must be positive and V0 nonnegative");
    const double target = static_cast<double>(N) * P;
    const double shift = (target - total(y)) / static_cast<double>(N);
    RVec yh(N);
    for (std::size_t i = 0; i < N; ++i)
        yh[i] = y[i] + shift;

    const auto order = descending_order(yh);
    RVec x0 = simplex_at(yh, order, 0.0, P, target);
    if (variance_sum(x0, P) <= V0)
        return x0;

    const double v = variance_sum(yh, P);
    if (v > 0.0) {
        const double s = std::sqrt(V0 / v);
        RVec z(N);
        bool nonneg = true;
        for (std::size_t i = 0; i < N; ++i) {
            z[i] = P + s * (yh[i] - P);
            nonneg = nonneg && z[i] >= 0.0;
        }
        if (nonneg)
            return z;
    }

    // The variance of the simplex projection of (1-t) y + t P is
    // nonincreasing in t and reaches 0 at t = 1.
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (variance_sum(simplex_at(yh, order, mid, P, target), P) > V0)
            lo = mid;
        else
            hi = mid;
    }
    return simplex_at(yh, order, hi, P, target);
}

Stage2Result stage2_project(const ofdm::PowerAllocation& X_star, double P, double V0)
{
    if (X_star.power.empty())
        throw DimensionError("cannot project an empty allocation");
    if (!(P > 0.0) || !(V0 >= 0.0))
        throw DomainError("P must be positive and V0 nonnegative");
    Stage2Result res{X_star, false};
    res.X.mean_power = P;
    const double v = variance_sum(X_star.power, P);
    if (v <= V0 * (1.0 + 1e-12))
        return res;

    res.projected = true;
    const double s = std::sqrt(V0 / v);
    bool nonneg = true;
    for (std::size_t n = 0; n < res.X.power.size(); ++n) {
        res.X.power[n] = P + s * (X_star.power[n] - P);
        nonneg = nonneg && res.X.power[n] >= 0.0;
    }
    if (!nonneg)
        res.X.power = project_feasible(X_star.power, P, V0);
    return res;
}

AllocSolution two_stage(const AllocProblem& p, double eps)
{
    p.validate();
    AllocSolution sol;
    sol.zeta = zeta(p);
    auto s1 = stage1_waterfill(p, sol.zeta, eps);
    auto s2 = stage2_project(s1.X, p.P, p.V0);
    sol.stage1_X = std::move(s1.X);
    sol.X = std::move(s2.X);
    sol.projected = s2.projected;
    sol.lambda = s1.lambda;
    sol.iterations = s1.iterations;
    sol.bracket_iterations = s1.bracket_iterations;
    sol.objective = objective(p, sol.X.power, sol.zeta);
    return sol;
}

AllocSolution single_stage_pg(const AllocProblem& p, int steps, double step_size)
{
    p.validate();
    const std::size_t N = p.N();
    AllocSolution sol;
    sol.zeta = zeta(p);
    const double z = sol.zeta;

    RVec gam(N);
    for (std::size_t n = 0; n < N; ++n)
        gam[n] = p.gamma(n);
    auto grad = [&](const RVec& X, RVec& g) {
        double gmax = 0.0;
        for (std::size_t n = 0; n < N; ++n) {
            g[n] = p.alpha * z * gam[n] / (kLn2 * (1.0 + gam[n] * X[n])) + (1.0 - p.alpha) * p.weights[n];
            gmax = std::max(gmax, std::abs(g[n]));
        }
        return gmax;
    };

    RVec X(N, p.P), g(N), trial(N), step(N);
    double f = objective(p, X, z);
    double t = step_size;
    if (!(t > 0.0)) {
        const double gmax = grad(X, g);
        t = gmax > 0.0 ? p.P / gmax : p.P;
    }
    RVec best = X;
    double best_f = f;
    int stalls = 0;
    int k = 0;
    for (; k < steps; ++k) {
        grad(X, g);
        bool accepted = false;
        double f_new = f;
        for (int bt = 0; bt < 80; ++bt) {
            for (std::size_t n = 0; n < N; ++n)
                step[n] = X[n] + t * g[n];
            trial = project_feasible(step, p.P, p.V0);
            double dir = 0.0;
            for (std::size_t n = 0; n < N; ++n)
                dir += g[n] * (trial[n] - X[n]);
            f_new = objective(p, trial, z);
            if (f_new >= f + 1e-4 * dir) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted)
            break;
        const double gain = f_new - f;
        X.swap(trial);
        f = f_new;
        if (f > best_f) {
            best_f = f;
            best = X;
        }
        stalls = gain <= 1e-13 * std::abs(f) ? stalls + 1 : 0;
        if (stalls >= 5)
            break;
        t *= 2.0;
    }
    sol.X = ofdm::PowerAllocation{std::move(best), p.P};
    sol.stage1_X = sol.X;
    sol.objective = best_f;
    sol.iterations = k;
    sol.projected = true;
    return sol;
}

AllocSolution exhaustive_oracle(const AllocProblem& p, int levels)
{
    p.validate();
    const std::size_t N = p.N();
    if (N > 8)
        throw SizeError("exhaustive oracle is limited to N <= 8");
    if (levels < 2 || levels > 16)
        throw SizeError("exhaustive oracle needs 2 <= L <= 16");
    const int top = levels - 1;
    if ((static_cast<int>(N) * top) % 2 != 0)
        throw DomainError("N (L-1) must be even so the grid contains sum X = N P");
    const int sum_j = static_cast<int>(N) * top / 2;
    const double step = 2.0 * p.P / static_cast<double>(top);

    AllocSolution sol;
    sol.zeta = zeta(p);
    sol.objective = -std::numeric_limits<double>::infinity();
    RVec X(N);
    bool found = false;
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
        if (i + 1 == N) {
            if (remaining > top)
                return;
            X[i] = step * remaining;
            if (variance_sum(X, p.P) > p.V0 * (1.0 + 1e-9))
                return;
            const double f = objective(p, X, sol.zeta);
            if (f > sol.objective) {
                sol.objective = f;
                sol.X = ofdm::PowerAllocation{X, p.P};
                found = true;
            }
            return;
        }
        const int slots = static_cast<int>(N - i - 1);
        for (int j = std::max(0, remaining - slots * top); j <= std::min(top, remaining); ++j) {
            X[i] = step * j;
            rec(i + 1, remaining - j);
        }
    };
    rec(0, sum_j);
    if (!found)
        throw DomainError("no feasible grid point (V0 too small for the level spacing)");
    sol.stage1_X = sol.X;
    return sol;
}

} // namespace isac::alloc
