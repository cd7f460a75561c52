#include "isac/experiment.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

using namespace isac;
using namespace isac::experiment;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("isac-test-" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ExperimentConfig config(const std::string& text, const fs::path& out)
{
    auto cfg = parse_config_text(text);
    cfg.output_dir = out.string();
    return cfg;
}

} // namespace

TEST(Config, ParsesSettingsAndParams)
{
    const auto cfg = parse_config_text(
        "# comment\n"
        "experiment = isl-cdf\n"
        "\n"
        "seed = 42   # trailing\n"
        "trials=7\n"
        "workers = 2\n"
        "output_dir = /tmp/x\n"
        "n_subcarriers = 256\n");
    EXPECT_EQ(cfg.experiment, "isl-cdf");
    EXPECT_EQ(cfg.seed.value(), 42u);
    EXPECT_EQ(cfg.trials.value(), 7u);
    EXPECT_EQ(cfg.workers.value(), 2u);
    EXPECT_EQ(cfg.output_dir.value(), "/tmp/x");
    ASSERT_EQ(cfg.params.size(), 1u);
    EXPECT_EQ(cfg.params.at("n_subcarriers"), "256");
}

TEST(Config, Errors)
{
    EXPECT_THROW(parse_config_text("experiment isl-cdf\n"), ConfigError);
    EXPECT_THROW(parse_config_text("a = 1\na = 2\n"), ConfigError);
    EXPECT_THROW(parse_config_text(" = 3\n"), ConfigError);
    EXPECT_THROW(parse_config_text("seed = -1\n"), ConfigError);
    EXPECT_THROW(parse_config_text("trials = 3.5\n"), ConfigError);
    EXPECT_THROW(parse_config_file("/nonexistent/isac.cfg"), ConfigError);
}

TEST(Config, Numbers)
{
    EXPECT_DOUBLE_EQ(parse_double("k", "2.5e6"), 2.5e6);
    EXPECT_THROW(parse_double("k", "2.5x"), ConfigError);
    EXPECT_THROW(parse_double("k", "nan"), ConfigError);
    EXPECT_THROW(parse_double("k", ""), ConfigError);
    EXPECT_EQ(parse_int("k", "-12"), -12);
    EXPECT_THROW(parse_int("k", "1e3"), ConfigError);
    EXPECT_EQ(parse_uint64("k", "18446744073709551615"), std::numeric_limits<std::uint64_t>::max());

    EXPECT_EQ(parse_double_list("k", "1, 2,3"), (std::vector<double>{1, 2, 3}));
    const auto lin = parse_double_list("k", "linspace(0, 1, 5)");
    ASSERT_EQ(lin.size(), 5u);
    EXPECT_DOUBLE_EQ(lin[1], 0.25);
    EXPECT_DOUBLE_EQ(lin.back(), 1.0);
    const auto lg = parse_double_list("k", "logspace(1e8, 1e10, 3)");
    ASSERT_EQ(lg.size(), 3u);
    EXPECT_NEAR(lg[1], 1e9, 1e-3);
    EXPECT_THROW(parse_double_list("k", "linspace(0, 1)"), ConfigError);
    EXPECT_THROW(parse_double_list("k", "logspace(-1, 1, 3)"), ConfigError);
    EXPECT_THROW(parse_double_list("k", "1,,2"), ConfigError);
    EXPECT_EQ(parse_string_list("QPSK, 16QAM"), (std::vector<std::string>{"QPSK", "16QAM"}));
}

TEST(ParamSetTest, DefaultsOverridesAndTypes)
{
    const ParamSet ps({{"n", "8"}, {"x", "0.5"}, {"on", "true"}, {"list", "1, 2"}, {"names", "a, b"}},
                      {{"x", "1.5"}});
    EXPECT_EQ(ps.count("n"), 8u);
    EXPECT_DOUBLE_EQ(ps.num("x"), 1.5);
    EXPECT_TRUE(ps.flag("on"));
    EXPECT_EQ(ps.counts("list"), (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(ps.strs("names"), (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(ps.resolved()[1].second, "1.5");
    EXPECT_THROW(ps.num("missing"), ConfigError);
    EXPECT_THROW(ParamSet({{"n", "1"}}, {{"typo", "2"}}), ConfigError);
    const ParamSet bad({{"n", "0"}, {"on", "maybe"}}, {});
    EXPECT_THROW(bad.count("n"), ConfigError);
    EXPECT_THROW(bad.flag("on"), ConfigError);
}

TEST(Csv, RoundTrip)
{
    Table t{"curve", {"x", "y"}, {}};
    t.add({1.0, 0.1});
    t.add({2.0, 1.0 / 3.0});
    t.add({3.0, -2.5e-300});
    const std::vector<std::pair<std::string, std::string>> meta{{"experiment", "demo"}, {"seed", "9"}};
    const std::string text = format_csv(t, meta);
    EXPECT_EQ(text.substr(0, 18), "# experiment: demo");
    const auto back = parse_csv(text);
    EXPECT_EQ(back.meta, meta);
    EXPECT_EQ(back.table.columns, t.columns);
    ASSERT_EQ(back.table.rows.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_EQ(back.table.rows[i], t.rows[i]); // %.17g round-trips exactly
    EXPECT_EQ(format_csv(back.table, back.meta), text);
}

TEST(Csv, RejectsBadInput)
{
    Table t{"c", {"x"}, {}};
    t.add({std::numeric_limits<double>::infinity()});
    EXPECT_THROW(format_csv(t, {}), Error);
    Table wide{"c", {"x"}, {}};
    EXPECT_THROW(wide.add({1.0, 2.0}), Error);
    EXPECT_THROW(parse_csv("x,y\n1\n"), Error);
    EXPECT_THROW(parse_csv("x\nabc\n"), Error);
}

TEST(Registry, ElevenExperimentsWithDefaults)
{
    const auto& reg = registry();
    ASSERT_EQ(reg.size(), 11u);
    for (const char* name : {"isl-cdf", "isl-gap", "otfs-pilot-cdf", "se-vs-distance", "gap-region",
                             "allocation-demo", "tradeoff-sweep", "solver-compare", "crb-validate", "psl-law",
                             "imaging-convergence"}) {
        const auto& e = find_experiment(name);
        EXPECT_FALSE(e.figures.empty()) << name;
        EXPECT_FALSE(e.outputs.empty()) << name;
        EXPECT_GE(e.default_trials, 1u);
        EXPECT_NO_THROW(ParamSet(e.defaults, {})) << name;
    }
    EXPECT_THROW(find_experiment("nope"), UnknownExperimentError);
}

TEST(Run, WritesCsvManifestAndResolvedConfig)
{
    const fs::path out = scratch("manifest");
    const auto res = run(config("experiment = isl-cdf\ntrials = 20\nn_subcarriers = 64\n", out));
    ASSERT_EQ(res.files.size(), 4u);
    const auto cdf = read_csv(out / "isl-cdf_cdf.csv");
    EXPECT_EQ(cdf.table.columns, (std::vector<std::string>{"prob", "isl_qpsk", "isl_16qam", "isl_64qam"}));
    EXPECT_EQ(cdf.table.rows.size(), 20u);
    for (std::size_t i = 1; i < cdf.table.rows.size(); ++i)
        for (std::size_t c = 0; c < 4; ++c)
            EXPECT_LE(cdf.table.rows[i - 1][c], cdf.table.rows[i][c]);

    const auto j = nlohmann::json::parse(slurp(out / "isl-cdf_manifest.json"));
    EXPECT_EQ(j["experiment"], "isl-cdf");
    EXPECT_EQ(j["seed"], 1);
    EXPECT_EQ(j["trials"], 20);
    EXPECT_EQ(j["params"]["n_subcarriers"], "64");
    EXPECT_EQ(j["version"], version_string());
    ASSERT_EQ(j["files"].size(), 2u);
    for (const auto& f : j["files"]) {
        const auto csv = read_csv(out / f["path"].get<std::string>());
        EXPECT_EQ(csv.table.columns, f["columns"].get<std::vector<std::string>>());
        EXPECT_EQ(csv.table.rows.size(), f["rows"].get<std::size_t>());
    }
    fs::remove_all(out);
}

TEST(Run, DeterministicAcrossRunsAndWorkers)
{
    const std::string text = "experiment = tradeoff-sweep\ntrials = 6\nalphas = 0, 0.5, 1\nn_subcarriers = 128\n"
                             "notch_centers = 32, 96\n";
    const fs::path a = scratch("det-a"), b = scratch("det-b");
    run(config(text, a));
    auto cfg = config(text, b);
    cfg.workers = 3;
    run(cfg);
    for (const char* f : {"tradeoff-sweep_per_trial.csv", "tradeoff-sweep_summary.csv"})
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Run, ResolvedConfigReproducesRun)
{
    const fs::path a = scratch("echo-a"), b = scratch("echo-b");
    run(config("experiment = psl-law\ntrials = 5\nlengths = 64, 256\nseed = 77\n", a));
    auto again = parse_config_file(a / "psl-law_resolved.cfg");
    again.output_dir = b.string();
    run(again);
    EXPECT_EQ(slurp(a / "psl-law_summary.csv"), slurp(b / "psl-law_summary.csv"));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Run, AddingTrialsKeepsEarlierTrials)
{
    const fs::path a = scratch("prefix-a"), b = scratch("prefix-b");
    const std::string base = "experiment = solver-compare\nn_subcarriers = 64\npg_steps = 200\nnotch_centers = 16, 48\n";
    run(config(base + "trials = 3\n", a));
    run(config(base + "trials = 6\n", b));
    const auto small = read_csv(a / "solver-compare_per_trial.csv");
    const auto big = read_csv(b / "solver-compare_per_trial.csv");
    ASSERT_EQ(small.table.rows.size(), 3u);
    ASSERT_EQ(big.table.rows.size(), 6u);
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_EQ(small.table.rows[i], big.table.rows[i]);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Run, ErrorsMapToExitCodes)
{
    const fs::path out = scratch("errors");
    try {
        run(config("experiment = bogus\n", out));
        FAIL();
    } catch (const std::exception& e) {
        EXPECT_EQ(exit_code_for(e), kExitUnknownExperiment);
    }
    try {
        run(config("experiment = isl-cdf\nnot_a_param = 1\n", out));
        FAIL();
    } catch (const std::exception& e) {
        EXPECT_EQ(exit_code_for(e), kExitInvalidConfig);
    }
    try {
        run(config("experiment = isl-cdf\nn_subcarriers = 1\n", out));
        FAIL();
    } catch (const std::exception& e) {
        EXPECT_EQ(exit_code_for(e), kExitInvalidConfig);
    }
    fs::create_directories(out);
    std::ofstream(out / "file") << "x";
    try {
        run(config("experiment = isl-cdf\ntrials = 2\n", out / "file" / "sub"));
        FAIL();
    } catch (const std::exception& e) {
        EXPECT_EQ(exit_code_for(e), kExitOutput);
    }
    fs::remove_all(out);
}

TEST(Run, EnvironmentSelectsOutputDir)
{
    const fs::path out = scratch("env");
    ::setenv(kOutputEnv, out.c_str(), 1);
    auto cfg = parse_config_text("experiment = se-vs-distance\n");
    const auto res = run(cfg);
    ::unsetenv(kOutputEnv);
    EXPECT_EQ(res.output_dir, out);
    EXPECT_TRUE(fs::exists(out / "se-vs-distance_manifest.json"));
    fs::remove_all(out);
}

TEST(Run, EveryExperimentRunsSmall)
{
    const std::vector<std::pair<std::string, std::string>> cases{
        {"isl-gap", "lengths = 16, 64\n"},
        {"otfs-pilot-cdf", "m_tau = 16\nn_nu = 16\npilot_counts = 1, 4\n"},
        {"gap-region", "powers_w = 0.01, 0.2\ndistances_m = 50, 350\n"},
        {"allocation-demo", "n_subcarriers = 128\nnotch_centers = 32, 96\n"},
        {"crb-validate", "snr_db = 20\n"},
        {"imaging-convergence", "spans = 2, 4\n"},
    };
    for (const auto& [name, extra] : cases) {
        const fs::path out = scratch("small-" + name);
        const auto res = run(config("experiment = " + name + "\ntrials = 3\n" + extra, out));
        EXPECT_GE(res.files.size(), 3u) << name;
        for (const auto& f : res.files)
            if (f.extension() == ".csv") {
                EXPECT_NO_THROW(read_csv(f)) << f;
            }
        fs::remove_all(out);
    }
}
