#include "recipes.hpp"

#include <string>

namespace isac::experiment {

namespace {

using Defaults = std::vector<std::pair<std::string, std::string>>;

Defaults allocation_preset(Defaults extra)
{
    Defaults d{
        {"n_subcarriers", "1024"},
        {"bandwidth_hz", "1e9"},
        {"total_power_w", "0.2"},
        {"attenuation_db", "50"},
        {"noise_psd_dbm_hz", "-150"},
        {"v0_scale", "1"},
        {"notch_centers", "260, 760"},
        {"notch_depth_db", "20"},
        {"notch_width", "32"},
        {"carrier_hz", "0"},
        {"absolute_frequency", "false"},
    };
    d.insert(d.end(), extra.begin(), extra.end());
    return d;
}

Defaults link_budget(Defaults extra)
{
    Defaults d{
        {"tx_power_w", "0.2"},
        {"noise_psd_dbm_hz", "-150"},
        {"pathloss_coefficient", "3.5"},
        {"pathloss_intercept_db", "48.6"},
    };
    d.insert(d.end(), extra.begin(), extra.end());
    return d;
}

std::string even_spans()
{
    std::string s;
    for (int k = 2; k <= 64; k += 2)
        s += (s.empty() ? "" : ", ") + std::to_string(k);
    return s;
}

std::vector<ExperimentInfo> build()
{
    return {
        {"isl-cdf", "ISL CDF per constellation",
         "CDF of normalized aperiodic ISL for flat-allocation OFDM bodies per constellation",
         {{"n_subcarriers", "1024"}, {"modulations", "QPSK, 16QAM, 64QAM"}, {"bootstrap_resamples", "200"}},
         1000,
         {"cdf: prob, isl_<modulation>...", "summary: modulation_order, median, mean, bootstrap_se_median, p10, p90"},
         recipes::isl_cdf},
        {"isl-gap", "aperiodic vs circular ISL error curve",
         "Relative gap between two-sided aperiodic and circular ISL of i.i.d. symbol sequences versus length",
         {{"lengths", "16, 32, 64, 128, 256, 512, 1024, 2048"}, {"modulation", "QPSK"}},
         200,
         {"gap: n, trials, mean_rel_error, stderr_rel_error, rel_error_of_means, mean_isl_aperiodic_two_sided, "
          "mean_isl_circular"},
         recipes::isl_gap},
        {"otfs-pilot-cdf", "OTFS ISL CDF per pilot layout",
         "CDF of OTFS time-signal ISL for pilots multiplied along the delay or Doppler axis",
         {{"m_tau", "80"},
          {"n_nu", "80"},
          {"subcarrier_spacing_hz", "2.5e6"},
          {"data_energy", "1"},
          {"pilot_energy", "0.15"},
          {"pilot_counts", "1, 10, 20, 40"},
          {"axes", "delay, doppler"},
          {"anchor_delay", "0"},
          {"anchor_doppler", "0"},
          {"bootstrap_resamples", "200"}},
         500,
         {"cdf_<axis>: prob, isl_p<count>...",
          "summary: axis (0 delay, 1 doppler), pilots, median, mean, bootstrap_se_median, "
          "paired_median_diff_vs_first, paired_diff_se"},
         recipes::otfs_pilot_cdf},
        {"se-vs-distance", "spectral efficiency vs distance",
         "Gaussian and QPSK spectral efficiency versus distance under the link budget",
         link_budget({{"distances_m", "linspace(50, 350, 31)"}, {"bandwidths_hz", "5e8, 4e9"}}),
         1,
         {"se: bandwidth_hz, distance_m, snr_db, gaussian_se, qpsk_se, gaussian_rate_bps, qpsk_rate_bps, rel_gap",
          "max_gap: bandwidth_hz, max_rel_gap, min_gaussian_minus_qpsk"},
         recipes::se_vs_distance},
        {"gap-region", "QPSK gap region surface",
         "Smallest bandwidth at which the QPSK shortfall is within v, per transmit power and distance",
         link_budget({{"powers_w", "linspace(0.01, 0.2, 20)"},
                      {"distances_m", "linspace(50, 350, 31)"},
                      {"bandwidths_hz", "logspace(1e8, 1e11, 61)"},
                      {"tolerances", "0.0001, 0.01, 0.1"}}),
         1,
         {"region: v, power_w, distance_m, feasible, min_bandwidth_hz (0 when infeasible), gap_at_min"},
         recipes::gap_region},
        {"allocation-demo", "allocation profile and autocorrelation",
         "Stage-1 and final two-stage allocations on the notched profile, with their autocorrelations",
         allocation_preset({{"alphas", "0, 0.5, 1"}, {"fading", "none"}}),
         1,
         {"allocation: subcarrier, freq_offset_hz, gain_db, stage1_alpha_<a>, final_alpha_<a>...",
          "summary: alpha, objective, sum_rate_bps, rms_bandwidth_hz, variance_sum, v0, projected, lambda, "
          "bisection_iterations, aperiodic_isl",
          "autocorr: lag, circular_db_alpha_<a>..."},
         recipes::allocation_demo},
        {"tradeoff-sweep", "RMS bandwidth / sum-rate tradeoff",
         "RMS bandwidth and sum rate of the two-stage allocation versus alpha over Rayleigh draws "
         "(lambda_fig = 1 - alpha)",
         allocation_preset({{"alphas", "linspace(0, 1, 11)"}}),
         200,
         {"per_trial: alpha, lambda_fig, trial, rms_bandwidth_hz, sum_rate_bps, objective, projected",
          "summary: alpha, lambda_fig, mean_rms_bandwidth_hz, se_rms_bandwidth_hz, mean_sum_rate_bps, "
          "se_sum_rate_bps, projected_fraction"},
         recipes::tradeoff_sweep},
        {"solver-compare", "solver objective comparison",
         "Two-stage objective against the projected-gradient reference over Rayleigh draws",
         allocation_preset({{"alpha", "0.5"}, {"pg_steps", "2000"}}),
         1000,
         {"per_trial: trial, two_stage_objective, pg_objective, ratio, pg_iterations, projected",
          "summary: alpha, trials, mean_ratio, min_ratio, fraction_ratio_ge_0.95"},
         recipes::solver_compare},
        {"crb-validate", "ranging MSE vs bound",
         "Matched-filter ranging MSE of a QPSK OFDM body against the Cramer-Rao bound",
         {{"n_subcarriers", "256"},
          {"pad_factor", "2"},
          {"sample_period_s", "1e-9"},
          {"upsample", "4"},
          {"min_delay_samples", "8"},
          {"max_delay_samples", "128"},
          {"snr_db", "20, 25, 30"}},
         1000,
         {"crb: snr_db, trials, mse_m2, mse_se_m2, crb_m2, ratio, bias_m"},
         recipes::crb_validate},
        {"psl-law", "peak sidelobe vs length",
         "Mean normalized peak sidelobe of random binary sequences against sqrt(2 ln N / N)",
         {{"lengths", "1024, 4096, 16384"}},
         500,
         {"psl: n, trials, mean_psl, se_psl, law, ratio, fraction_within_0.7_1.3"},
         recipes::psl_law},
        {"imaging-convergence", "imaging SNR convergence",
         "Imaging SNR of the averaged Kronecker operator versus the number of averaged frequencies",
         {{"carrier_hz", "28e9"},
          {"delta_f_hz", "100e6"},
          {"K", "4"},
          {"N", "4"},
          {"k1", "auto"},
          {"delta_k", "auto"},
          {"delta_l", "auto"},
          {"spans", even_spans()}},
         1,
         {"snr: span, k1, k2, snr, rel_change, has_prev"},
         recipes::imaging_convergence},
    };
}

} // namespace

const std::vector<ExperimentInfo>& registry()
{
    static const std::vector<ExperimentInfo> r = build();
    return r;
}

const ExperimentInfo& find_experiment(const std::string& name)
{
    for (const auto& e : registry())
        if (e.name == name)
            return e;
    throw UnknownExperimentError("unknown experiment '" + name + "'");
}

} // namespace isac::experiment
