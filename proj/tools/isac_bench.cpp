#include "isac/experiment.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>

namespace ex = isac::experiment;

namespace {

void print_list()
{
    std::printf("%-22s %-8s %s\n", "experiment", "trials", "reproduces");
    for (const auto& e : ex::registry())
        std::printf("%-22s %-8zu %s\n", e.name.c_str(), e.default_trials, e.figures.c_str());
}

void print_describe(const ex::ExperimentInfo& e)
{
    std::printf("%s\n  reproduces: %s\n  %s\n  default trials: %zu\n  parameters:\n", e.name.c_str(),
                e.figures.c_str(), e.summary.c_str(), e.default_trials);
    for (const auto& [k, v] : e.defaults)
        std::printf("    %-24s = %s\n", k.c_str(), v.c_str());
    std::printf("  outputs (<experiment>_<table>.csv):\n");
    for (const auto& o : e.outputs)
        std::printf("    %s\n", o.c_str());
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Wideband ISAC waveform and allocation benchmarks"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::size_t trials = 0, workers = 0;
    std::string out_dir;
    std::vector<std::string> sets;

    auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
    std::string config_path;
    run->add_option("config", config_path, "key = value config file")->required();
    auto* seed_opt = run->add_option("--seed", seed, "Master seed");
    auto* trials_opt = run->add_option("--trials", trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    auto* out_opt = run->add_option("--out", out_dir, "Output directory (default $ISAC_BENCH_OUT or ./isac-out)");
    auto* workers_opt = run->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    run->add_option("--set", sets, "Override a parameter, key=value (repeatable)");

    app.add_subcommand("list", "List registered experiments");
    auto* describe = app.add_subcommand("describe", "Show parameters and outputs of one experiment");
    std::string name;
    describe->add_option("experiment", name, "Experiment name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ex::kExitInvalidConfig;
    }

    try {
        if (app.got_subcommand("list")) {
            print_list();
            return ex::kExitOk;
        }
        if (app.got_subcommand("describe")) {
            print_describe(ex::find_experiment(name));
            return ex::kExitOk;
        }

        ex::ExperimentConfig cfg = ex::parse_config_file(config_path);
        if (*seed_opt)
            cfg.seed = seed;
        if (*trials_opt)
            cfg.trials = trials;
        if (*workers_opt)
            cfg.workers = workers;
        if (*out_opt)
            cfg.output_dir = out_dir;
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos)
                throw ex::ConfigError("--set expects key=value, got '" + s + "'");
            auto overlay = ex::parse_config_text(s);
            if (overlay.seed || overlay.trials || overlay.workers || overlay.output_dir || !overlay.experiment.empty())
                throw ex::ConfigError("use the dedicated flags for run settings, not --set");
            for (auto& [k, v] : overlay.params)
                cfg.params[k] = v;
        }

        const auto result = ex::run(cfg);
        for (const auto& f : result.files)
            std::printf("%s\n", f.string().c_str());
        return ex::kExitOk;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "isac-bench: %s\n", e.what());
        return ex::exit_code_for(e);
    }
}
