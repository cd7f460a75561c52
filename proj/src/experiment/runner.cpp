#include "isac/experiment.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>

#ifndef ISAC_VERSION
#define ISAC_VERSION "0.1.0"
#endif

namespace isac::experiment {

namespace fs = std::filesystem;

std::string version_string() { return ISAC_VERSION; }

namespace {

fs::path resolve_output_dir(const ExperimentConfig& cfg)
{
    if (cfg.output_dir && !cfg.output_dir->empty())
        return *cfg.output_dir;
    if (const char* env = std::getenv(kOutputEnv); env && *env)
        return env;
    return "isac-out";
}

void prepare_output_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw OutputError("cannot create output directory '" + dir.string() + "'");
    const fs::path probe = dir / ".isac-bench-write-test";
    {
        std::ofstream out(probe);
        if (!out)
            throw OutputError("output directory '" + dir.string() + "' is not writable");
    }
    fs::remove(probe, ec);
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text))
        throw OutputError("cannot write '" + path.string() + "'");
}

} // namespace

RunResult run(const ExperimentConfig& cfg)
{
    if (cfg.experiment.empty())
        throw ConfigError("config does not name an experiment");
    const ExperimentInfo& info = find_experiment(cfg.experiment);
    const ParamSet params(info.defaults, cfg.params);

    RunContext ctx;
    ctx.seed = cfg.seed.value_or(kDefaultSeed);
    ctx.trials = cfg.trials.value_or(info.default_trials);
    ctx.workers = cfg.workers.value_or(1);
    if (ctx.trials < 1 || ctx.workers < 1)
        throw ConfigError("trials and workers must be at least 1");

    const fs::path dir = resolve_output_dir(cfg);
    prepare_output_dir(dir);

    const std::vector<Table> tables = info.run(params, ctx);

    std::vector<std::pair<std::string, std::string>> meta{
        {"experiment", info.name},
        {"seed", std::to_string(ctx.seed)},
        {"trials", std::to_string(ctx.trials)},
        {"version", version_string()},
    };
    for (const auto& [k, v] : params.resolved())
        meta.emplace_back("param " + k, v);

    RunResult result;
    result.output_dir = dir;
    nlohmann::ordered_json manifest;
    manifest["experiment"] = info.name;
    manifest["figure"] = info.figures;
    manifest["seed"] = ctx.seed;
    manifest["trials"] = ctx.trials;
    manifest["version"] = version_string();
    manifest["params"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : params.resolved())
        manifest["params"][k] = v;
    manifest["files"] = nlohmann::ordered_json::array();

    for (const auto& t : tables) {
        auto table_meta = meta;
        table_meta.insert(table_meta.begin() + 1, {"table", t.name});
        const fs::path path = dir / (info.name + "_" + t.name + ".csv");
        write_csv(path, t, table_meta);
        result.files.push_back(path);
        manifest["files"].push_back(
            {{"table", t.name}, {"path", path.filename().string()}, {"columns", t.columns}, {"rows", t.rows.size()}});
    }

    std::string resolved = "experiment = " + info.name + "\nseed = " + std::to_string(ctx.seed) +
                           "\ntrials = " + std::to_string(ctx.trials) + "\n";
    for (const auto& [k, v] : params.resolved())
        resolved += k + " = " + v + "\n";
    const fs::path cfg_path = dir / (info.name + "_resolved.cfg");
    write_text(cfg_path, resolved);
    result.files.push_back(cfg_path);
    manifest["resolved_config"] = cfg_path.filename().string();

    const fs::path manifest_path = dir / (info.name + "_manifest.json");
    write_text(manifest_path, manifest.dump(2) + "\n");
    result.files.push_back(manifest_path);
    return result;
}

int exit_code_for(const std::exception& e) noexcept
{
    if (dynamic_cast<const UnknownExperimentError*>(&e))
        return kExitUnknownExperiment;
    if (dynamic_cast<const OutputError*>(&e))
        return kExitOutput;
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
        dynamic_cast<const DimensionError*>(&e) || dynamic_cast<const SizeError*>(&e))
        return kExitInvalidConfig;
    return kExitFailure;
}

} // namespace isac::experiment
