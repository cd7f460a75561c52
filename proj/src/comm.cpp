#include "isac/comm.hpp"

#include "isac/channel.hpp"
#include "isac/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace isac::comm {

double gaussian_se(double snr)
{
    if (!(snr >= 0.0))
        throw DomainError("SNR must be nonnegative");
    return std::log2(1.0 + snr);
}

namespace {

struct GaussHermite {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes and weights for weight exp(-x^2): Newton on the orthonormal Hermite
// recurrence from the usual asymptotic starting points.
GaussHermite build_gauss_hermite(int n)
{
    GaussHermite gh;
    gh.nodes.resize(static_cast<std::size_t>(n));
    gh.weights.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    const double pim4 = std::pow(kPi, -0.25);
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * gh.nodes[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * gh.nodes[1];
        else
            z = 2.0 * z - gh.nodes[static_cast<std::size_t>(i - 2)];
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z)))
                break;
        }
        const auto a = static_cast<std::size_t>(i);
        const auto b = static_cast<std::size_t>(n - 1 - i);
        gh.nodes[a] = z;
        gh.nodes[b] = -z;
        gh.weights[a] = 2.0 / (pp * pp);
        gh.weights[b] = gh.weights[a];
    }
    return gh;
}

const GaussHermite& gauss_hermite(int n)
{
    static std::mutex mu;
    static std::map<int, GaussHermite> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, build_gauss_hermite(n)).first;
    return it->second;
}

// log(cosh(u)) without overflow.
double log_cosh(double u)
{
    const double a = std::abs(u);
    return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

} // namespace

double qpsk_mi(double snr, int order)
{
    if (!(snr >= 0.0))
        throw DomainError("SNR must be nonnegative");
    if (order < 2)
        throw DomainError("quadrature order must be at least 2");
    if (snr == 0.0)
        return 0.0;
    // QPSK is two BPSK rails, each with amplitude^2 = 1/2 against noise
    // variance N0/2, so the per-rail SNR equals the symbol SNR.
    // BPSK at per-dimension SNR s: I = 1 - E[log2(1 + exp(t))],
    // t = -2s - 2 sqrt(s) z, z ~ N(0, 1). Using
    //   log(1 + e^t) = t/2 + log(2 cosh(t/2))
    // and E[t] = -2s gives E[log(1+e^t)] = ln 2 - s + E[log cosh(t/2)].
    const double s = snr;
    const auto& gh = gauss_hermite(order);
    double e = 0.0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
        const double z = std::sqrt(2.0) * gh.nodes[i];
        const double t = -2.0 * s - 2.0 * std::sqrt(s) * z;
        e += gh.weights[i] * log_cosh(t / 2.0);
    }
    e /= std::sqrt(kPi);
    const double nats = std::log(2.0) - s + e;
    const double bpsk = 1.0 - nats / std::log(2.0);
    return 2.0 * std::clamp(bpsk, 0.0, 1.0);
}

namespace {

double rate_terms(const ofdm::PowerAllocation& alloc, std::span<const double> gains, double noise_psd,
                  double bandwidth)
{
    if (alloc.size() != gains.size())
        throw DimensionError("allocation and gain vectors differ in length");
    if (!(noise_psd > 0.0) || !(bandwidth > 0.0))
        throw DomainError("noise PSD and bandwidth must be positive");
    const double n = static_cast<double>(gains.size());
    const double noise = noise_psd * bandwidth / n;
    double bits = 0.0;
    for (std::size_t i = 0; i < gains.size(); ++i)
        bits += std::log2(1.0 + gains[i] * alloc.power[i] / noise);
    return bits;
}

} // namespace

double sum_rate(const ofdm::PowerAllocation& alloc, std::span<const double> gains, double noise_psd,
                double bandwidth)
{
    return bandwidth / static_cast<double>(gains.size()) * rate_terms(alloc, gains, noise_psd, bandwidth);
}

double sum_rate_bits(const ofdm::PowerAllocation& alloc, std::span<const double> gains, double noise_psd,
                     double bandwidth)
{
    return rate_terms(alloc, gains, noise_psd, bandwidth);
}

void LinkBudget::validate() const
{
    if (!(tx_power > 0.0) || !(distance > 0.0) || !(bandwidth > 0.0) || !(noise_psd > 0.0))
        throw DomainError("link budget entries must be positive");
}

double LinkBudget::pathloss_db() const
{
    return channel::pathloss_db(distance, pathloss_coefficient, pathloss_intercept);
}

double LinkBudget::snr() const
{
    validate();
    return tx_power * std::pow(10.0, -pathloss_db() / 10.0) / (noise_psd * bandwidth);
}

double relative_gap(double snr)
{
    const double g = gaussian_se(snr);
    if (g == 0.0)
        return 0.0;
    return (g - qpsk_mi(snr)) / g;
}

std::vector<SeRow> se_vs_distance(const LinkBudget& base, const std::vector<double>& distances,
                                  const std::vector<double>& bandwidths)
{
    std::vector<double> d = distances, w = bandwidths;
    std::sort(d.begin(), d.end());
    std::sort(w.begin(), w.end());
    std::vector<SeRow> rows;
    rows.reserve(d.size() * w.size());
    for (double bw : w)
        for (double dist : d) {
            LinkBudget b = base;
            b.bandwidth = bw;
            b.distance = dist;
            SeRow r;
            r.bandwidth = bw;
            r.distance = dist;
            r.snr = b.snr();
            r.gaussian_se = gaussian_se(r.snr);
            r.qpsk_se = qpsk_mi(r.snr);
            r.gaussian_rate = r.gaussian_se * bw;
            r.qpsk_rate = r.qpsk_se * bw;
            r.rel_gap = r.gaussian_se > 0.0 ? (r.gaussian_se - r.qpsk_se) / r.gaussian_se : 0.0;
            rows.push_back(r);
        }
    return rows;
}

std::vector<GapCell> gap_region(const LinkBudget& base, const std::vector<double>& powers,
                                const std::vector<double>& distances, const std::vector<double>& bandwidths,
                                double v)
{
    if (powers.empty() || distances.empty() || bandwidths.empty())
        throw DomainError("gap_region grids must be nonempty");
    if (!(v > 0.0))
        throw DomainError("gap tolerance v must be positive");
    std::vector<double> p = powers, d = distances, w = bandwidths;
    std::sort(p.begin(), p.end());
    std::sort(d.begin(), d.end());
    std::sort(w.begin(), w.end());
    std::vector<GapCell> cells;
    for (double pw : p)
        for (double dist : d) {
            GapCell c;
            c.power = pw;
            c.distance = dist;
            for (double bw : w) {
                LinkBudget b = base;
                b.tx_power = pw;
                b.distance = dist;
                b.bandwidth = bw;
                const double gap = relative_gap(b.snr());
                if (gap <= v) {
                    c.feasible = true;
                    c.min_bandwidth = bw;
                    c.gap_at_min = gap;
                    break;
                }
            }
            cells.push_back(c);
        }
    return cells;
}

} // namespace isac::comm
