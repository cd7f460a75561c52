#include "recipes.hpp"

#include "isac/allocator.hpp"
#include "isac/comm.hpp"
#include "isac/otfs.hpp"
#include "isac/sensing.hpp"
#include "isac/stats.hpp"
#include "isac/studies.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

namespace isac::experiment::recipes {

namespace {

constexpr std::uint64_t kStreamBootstrap = 900;

std::string lower(std::string s)
{
    for (auto& c : s)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string num_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

double db_floor(double ratio) { return 10.0 * std::log10(std::max(ratio, 1e-30)); }

studies::AllocPreset read_preset(const ParamSet& ps)
{
    studies::AllocPreset p;
    p.N = ps.count("n_subcarriers");
    p.bandwidth = ps.num("bandwidth_hz");
    p.total_power = ps.num("total_power_w");
    p.attenuation_db = ps.num("attenuation_db");
    p.noise_psd = std::pow(10.0, ps.num("noise_psd_dbm_hz") / 10.0) * 1e-3;
    p.v0_scale = ps.num("v0_scale");
    p.notch_centers = ps.str("notch_centers") == "none" ? std::vector<double>{} : ps.nums("notch_centers");
    p.notch_depth_db = ps.num("notch_depth_db");
    p.notch_width = ps.num("notch_width");
    p.carrier = ps.num("carrier_hz");
    p.absolute_frequency = ps.flag("absolute_frequency");
    if (!(p.bandwidth > 0.0) || !(p.total_power > 0.0) || !(p.v0_scale >= 0.0))
        throw ConfigError("bandwidth, total power must be positive and v0_scale nonnegative");
    return p;
}

comm::LinkBudget read_budget(const ParamSet& ps)
{
    comm::LinkBudget b;
    b.tx_power = ps.num("tx_power_w");
    b.noise_psd = std::pow(10.0, ps.num("noise_psd_dbm_hz") / 10.0) * 1e-3;
    b.pathloss_coefficient = ps.num("pathloss_coefficient");
    b.pathloss_intercept = ps.num("pathloss_intercept_db");
    return b;
}

void add_cdf_rows(Table& t, const std::vector<RVec>& columns)
{
    std::vector<RVec> sorted = columns;
    for (auto& c : sorted)
        std::sort(c.begin(), c.end());
    const std::size_t n = sorted.front().size();
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> row{static_cast<double>(k + 1) / static_cast<double>(n)};
        for (const auto& c : sorted)
            row.push_back(c[k]);
        t.add(std::move(row));
    }
}

} // namespace

std::vector<Table> isl_cdf(const ParamSet& ps, const RunContext& ctx)
{
    const std::size_t n = ps.count("n_subcarriers");
    const auto names = ps.strs("modulations");
    const std::size_t resamples = ps.count("bootstrap_resamples");

    Table cdf{"cdf", {"prob"}, {}};
    Table summary{"summary", {"modulation_order", "median", "mean", "bootstrap_se_median", "p10", "p90"}, {}};
    std::vector<RVec> cols;
    for (const auto& name : names) {
        const Modulation m = modulation_from_string(name);
        cols.push_back(studies::ofdm_isl_trials(n, m, ctx.trials, ctx.seed, static_cast<std::uint64_t>(m), ctx.workers));
        cdf.columns.push_back("isl_" + lower(to_string(m)));
        Rng rng = make_rng(ctx.seed, kStreamBootstrap, static_cast<std::uint64_t>(m));
        const auto& v = cols.back();
        summary.add({static_cast<double>(constellation(m).points.size()), stats::median(v), stats::mean(v),
                     stats::bootstrap_se_median(v, resamples, rng), stats::quantile(v, 0.1),
                     stats::quantile(v, 0.9)});
    }
    add_cdf_rows(cdf, cols);
    std::sort(summary.rows.begin(), summary.rows.end());
    return {cdf, summary};
}

std::vector<Table> isl_gap(const ParamSet& ps, const RunContext& ctx)
{
    auto lengths = ps.counts("lengths");
    std::sort(lengths.begin(), lengths.end());
    const Modulation m = modulation_from_string(ps.str("modulation"));
    const auto rows = sensing::isl_gap_curve(lengths, ctx.trials, m, ctx.seed);
    Table t{"gap",
            {"n", "trials", "mean_rel_error", "stderr_rel_error", "rel_error_of_means", "mean_isl_aperiodic_two_sided",
             "mean_isl_circular"},
            {}};
    for (const auto& r : rows)
        t.add({static_cast<double>(r.n), static_cast<double>(r.trials), r.mean_rel_error, r.stderr_rel_error,
               r.rel_error_of_means, r.mean_isl_aperiodic, r.mean_isl_circular});
    return {t};
}

std::vector<Table> otfs_pilot_cdf(const ParamSet& ps, const RunContext& ctx)
{
    studies::OtfsSetup setup;
    setup.M_tau = ps.count("m_tau");
    setup.N_nu = ps.count("n_nu");
    setup.subcarrier_spacing = ps.num("subcarrier_spacing_hz");
    setup.E_s = ps.num("data_energy");
    setup.E_p = ps.num("pilot_energy");
    auto counts = ps.counts("pilot_counts");
    std::sort(counts.begin(), counts.end());
    const auto axes = ps.strs("axes");
    const std::size_t resamples = ps.count("bootstrap_resamples");
    const auto anchor_delay = static_cast<std::size_t>(ps.integer("anchor_delay"));
    const auto anchor_doppler = static_cast<std::size_t>(ps.integer("anchor_doppler"));

    std::vector<Table> out;
    Table summary{"summary",
                  {"axis", "pilots", "median", "mean", "bootstrap_se_median", "paired_median_diff_vs_first",
                   "paired_diff_se"},
                  {}};
    for (const auto& axis_name : axes) {
        const auto axis = otfs::pilot_axis_from_string(axis_name);
        Table cdf{std::string("cdf_") + otfs::to_string(axis), {"prob"}, {}};
        std::vector<RVec> cols;
        for (std::size_t c : counts) {
            otfs::PilotScheme scheme{axis, c, anchor_delay, anchor_doppler};
            cols.push_back(studies::otfs_isl_trials(setup, scheme, ctx.trials, ctx.seed, ctx.workers));
            cdf.columns.push_back("isl_p" + std::to_string(c));
            Rng rng = make_rng(ctx.seed, kStreamBootstrap + 1 + static_cast<std::uint64_t>(axis), c);
            const auto& v = cols.back();
            const auto diff = stats::paired_bootstrap_median_diff(cols.front(), v, resamples, rng);
            summary.add({static_cast<double>(axis), static_cast<double>(c), stats::median(v), stats::mean(v),
                         stats::bootstrap_se_median(v, resamples, rng), diff.estimate, diff.se});
        }
        add_cdf_rows(cdf, cols);
        out.push_back(std::move(cdf));
    }
    std::sort(summary.rows.begin(), summary.rows.end());
    out.push_back(std::move(summary));
    return out;
}

std::vector<Table> se_vs_distance(const ParamSet& ps, const RunContext&)
{
    const auto base = read_budget(ps);
    const auto rows = comm::se_vs_distance(base, ps.nums("distances_m"), ps.nums("bandwidths_hz"));
    Table t{"se",
            {"bandwidth_hz", "distance_m", "snr_db", "gaussian_se", "qpsk_se", "gaussian_rate_bps", "qpsk_rate_bps",
             "rel_gap"},
            {}};
    Table gap{"max_gap", {"bandwidth_hz", "max_rel_gap", "min_gaussian_minus_qpsk"}, {}};
    for (const auto& r : rows) {
        t.add({r.bandwidth, r.distance, 10.0 * std::log10(r.snr), r.gaussian_se, r.qpsk_se, r.gaussian_rate,
               r.qpsk_rate, r.rel_gap});
        if (gap.rows.empty() || gap.rows.back()[0] != r.bandwidth)
            gap.add({r.bandwidth, r.rel_gap, r.gaussian_se - r.qpsk_se});
        auto& g = gap.rows.back();
        g[1] = std::max(g[1], r.rel_gap);
        g[2] = std::min(g[2], r.gaussian_se - r.qpsk_se);
    }
    return {t, gap};
}

std::vector<Table> gap_region(const ParamSet& ps, const RunContext&)
{
    const auto base = read_budget(ps);
    auto tolerances = ps.nums("tolerances");
    std::sort(tolerances.begin(), tolerances.end());
    Table t{"region", {"v", "power_w", "distance_m", "feasible", "min_bandwidth_hz", "gap_at_min"}, {}};
    for (double v : tolerances) {
        const auto cells =
            comm::gap_region(base, ps.nums("powers_w"), ps.nums("distances_m"), ps.nums("bandwidths_hz"), v);
        for (const auto& c : cells)
            t.add({v, c.power, c.distance, c.feasible ? 1.0 : 0.0, c.min_bandwidth, c.gap_at_min});
    }
    return {t};
}

std::vector<Table> allocation_demo(const ParamSet& ps, const RunContext& ctx)
{
    const auto preset = read_preset(ps);
    auto alphas = ps.nums("alphas");
    std::sort(alphas.begin(), alphas.end());
    const bool rayleigh = ps.str("fading") == "rayleigh";
    if (!rayleigh && ps.str("fading") != "none")
        throw ConfigError("fading must be 'none' or 'rayleigh'");
    const RVec g = preset.gains(rayleigh, ctx.seed);
    const RVec freq = preset.frequency_offsets();

    Table alloc_t{"allocation", {"subcarrier", "freq_offset_hz", "gain_db"}, {}};
    Table summary{"summary",
                  {"alpha", "objective", "sum_rate_bps", "rms_bandwidth_hz", "variance_sum", "v0", "projected",
                   "lambda", "bisection_iterations", "aperiodic_isl"},
                  {}};
    Table acorr{"autocorr", {"lag"}, {}};

    Rng rng = make_rng(ctx.seed, kStreamBootstrap + 10, 0);
    const CVec data = random_symbols(preset.N, Modulation::qpsk, rng);
    std::vector<alloc::AllocSolution> sols;
    std::vector<CVec> corr;
    for (double a : alphas) {
        const auto p = preset.problem(a, g);
        sols.push_back(alloc::two_stage(p));
        const auto& s = sols.back();
        const std::string tag = num_label(a);
        alloc_t.columns.push_back("stage1_alpha_" + tag);
        alloc_t.columns.push_back("final_alpha_" + tag);
        acorr.columns.push_back("circular_db_alpha_" + tag);

        CVec sym(preset.N);
        for (std::size_t n = 0; n < preset.N; ++n)
            sym[n] = std::sqrt(s.X.power[n]) * data[n];
        const CVec body = idft(sym);
        corr.push_back(acorr_circular(body));
        summary.add({a, s.objective, comm::sum_rate(s.X, g, preset.noise_psd, preset.bandwidth),
                     sensing::rms_bandwidth(s.X.power, freq), s.X.variance_sum(), p.V0, s.projected ? 1.0 : 0.0,
                     s.lambda, static_cast<double>(s.iterations), sensing::isl(body, sensing::CorrMode::aperiodic)});
    }
    for (std::size_t n = 0; n < preset.N; ++n) {
        std::vector<double> row{static_cast<double>(n), freq[n], db_floor(g[n])};
        for (const auto& s : sols) {
            row.push_back(s.stage1_X.power[n]);
            row.push_back(s.X.power[n]);
        }
        alloc_t.add(std::move(row));
    }
    for (std::size_t l = 0; l < preset.N; ++l) {
        std::vector<double> row{static_cast<double>(l)};
        for (const auto& r : corr)
            row.push_back(20.0 * std::log10(std::max(std::abs(r[l]) / std::abs(r[0]), 1e-15)));
        acorr.add(std::move(row));
    }
    return {alloc_t, summary, acorr};
}

std::vector<Table> tradeoff_sweep(const ParamSet& ps, const RunContext& ctx)
{
    const auto preset = read_preset(ps);
    auto alphas = ps.nums("alphas");
    std::sort(alphas.begin(), alphas.end());
    const auto res = studies::tradeoff(preset, alphas, ctx.trials, ctx.seed, ctx.workers);

    Table per{"per_trial",
              {"alpha", "lambda_fig", "trial", "rms_bandwidth_hz", "sum_rate_bps", "objective", "projected"},
              {}};
    Table summary{"summary",
                  {"alpha", "lambda_fig", "mean_rms_bandwidth_hz", "se_rms_bandwidth_hz", "mean_sum_rate_bps",
                   "se_sum_rate_bps", "projected_fraction"},
                  {}};
    for (std::size_t a = 0; a < alphas.size(); ++a) {
        RVec rms, rate;
        double proj = 0.0;
        for (std::size_t t = 0; t < res[a].size(); ++t) {
            const auto& s = res[a][t];
            per.add({alphas[a], 1.0 - alphas[a], static_cast<double>(t), s.rms_bandwidth, s.sum_rate, s.objective,
                     s.projected ? 1.0 : 0.0});
            rms.push_back(s.rms_bandwidth);
            rate.push_back(s.sum_rate);
            proj += s.projected ? 1.0 : 0.0;
        }
        summary.add({alphas[a], 1.0 - alphas[a], stats::mean(rms), stats::std_error(rms), stats::mean(rate),
                     stats::std_error(rate), proj / static_cast<double>(rms.size())});
    }
    return {per, summary};
}

std::vector<Table> solver_compare(const ParamSet& ps, const RunContext& ctx)
{
    const auto preset = read_preset(ps);
    const double alpha = ps.num("alpha");
    const auto steps = ps.integer("pg_steps");
    if (steps < 1)
        throw ConfigError("pg_steps must be at least 1");
    const auto res = studies::solver_compare(preset, alpha, ctx.trials, ctx.seed, ctx.workers, static_cast<int>(steps));
    Table per{"per_trial",
              {"trial", "two_stage_objective", "pg_objective", "ratio", "pg_iterations", "projected"},
              {}};
    RVec ratio;
    for (std::size_t t = 0; t < res.size(); ++t) {
        const auto& s = res[t];
        ratio.push_back(s.two_stage / s.pg);
        per.add({static_cast<double>(t), s.two_stage, s.pg, ratio.back(), static_cast<double>(s.pg_iterations),
                 s.projected ? 1.0 : 0.0});
    }
    const double ok = static_cast<double>(std::count_if(ratio.begin(), ratio.end(), [](double r) { return r >= 0.95; }));
    Table summary{"summary", {"alpha", "trials", "mean_ratio", "min_ratio", "fraction_ratio_ge_0.95"}, {}};
    summary.add({alpha, static_cast<double>(ratio.size()), stats::mean(ratio),
                 *std::min_element(ratio.begin(), ratio.end()), ok / static_cast<double>(ratio.size())});
    return {per, summary};
}

std::vector<Table> crb_validate(const ParamSet& ps, const RunContext& ctx)
{
    studies::CrbSetup setup;
    setup.n_subcarriers = ps.count("n_subcarriers");
    setup.pad_factor = ps.count("pad_factor");
    setup.sample_period = ps.num("sample_period_s");
    setup.upsample = ps.count("upsample");
    setup.min_delay = ps.num("min_delay_samples");
    setup.max_delay = ps.num("max_delay_samples");
    auto snrs = ps.nums("snr_db");
    std::sort(snrs.begin(), snrs.end());
    Table t{"crb", {"snr_db", "trials", "mse_m2", "mse_se_m2", "crb_m2", "ratio", "bias_m"}, {}};
    for (double s : snrs) {
        const auto p = studies::crb_monte_carlo(setup, s, ctx.trials, ctx.seed, ctx.workers);
        t.add({p.snr_db, static_cast<double>(p.trials), p.mse, p.mse_se, p.crb, p.ratio, p.bias});
    }
    return {t};
}

std::vector<Table> psl_law(const ParamSet& ps, const RunContext& ctx)
{
    auto lengths = ps.counts("lengths");
    std::sort(lengths.begin(), lengths.end());
    Table t{"psl", {"n", "trials", "mean_psl", "se_psl", "law", "ratio", "fraction_within_0.7_1.3"}, {}};
    for (std::size_t n : lengths) {
        if (n < 2)
            throw ConfigError("PSL lengths must be at least 2");
        const auto v = studies::psl_trials(n, ctx.trials, ctx.seed, ctx.workers);
        const double nd = static_cast<double>(n);
        const double law = std::sqrt(2.0 * std::log(nd) / nd);
        const double within = static_cast<double>(std::count_if(v.begin(), v.end(), [&](double x) {
            return x >= 0.7 * law && x <= 1.3 * law;
        }));
        t.add({nd, static_cast<double>(v.size()), stats::mean(v), stats::std_error(v), law, stats::mean(v) / law,
               within / static_cast<double>(v.size())});
    }
    return {t};
}

std::vector<Table> imaging_convergence(const ParamSet& ps, const RunContext&)
{
    const double fc = ps.num("carrier_hz");
    const double df = ps.num("delta_f_hz");
    if (!(fc > 0.0) || !(df > 0.0))
        throw ConfigError("carrier and frequency step must be positive");
    sensing::ImagingParams base;
    base.K = ps.count("K");
    base.N = ps.count("N");
    base.k1 = ps.str("k1") == "auto" ? static_cast<std::int64_t>(std::llround(fc / df)) : ps.integer("k1");
    base.dk = ps.str("delta_k") == "auto" ? df / kSpeedOfLight : ps.num("delta_k");
    base.dL = ps.str("delta_l") == "auto" ? kSpeedOfLight / (2.0 * fc) : ps.num("delta_l");
    auto spans = ps.counts("spans");
    std::sort(spans.begin(), spans.end());
    Table t{"snr", {"span", "k1", "k2", "snr", "rel_change", "has_prev"}, {}};
    double prev = 0.0;
    for (std::size_t i = 0; i < spans.size(); ++i) {
        auto p = base;
        p.k2 = p.k1 + static_cast<std::int64_t>(spans[i]);
        const double v = sensing::imaging_snr(p);
        const double rel = i == 0 ? 0.0 : std::abs(v - prev) / std::abs(prev);
        t.add({static_cast<double>(spans[i]), static_cast<double>(p.k1), static_cast<double>(p.k2), v, rel,
               i == 0 ? 0.0 : 1.0});
        prev = v;
    }
    return {t};
}

} // namespace isac::experiment::recipes
