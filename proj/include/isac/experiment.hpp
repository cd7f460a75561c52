#pragma once

#include "isac/error.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace isac::experiment {

// Exit codes of the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUnknownExperiment = 2;
inline constexpr int kExitInvalidConfig = 3;
inline constexpr int kExitOutput = 4;

class UnknownExperimentError : public Error {
public:
    using Error::Error;
};
class ConfigError : public Error {
public:
    using Error::Error;
};
class OutputError : public Error {
public:
    using Error::Error;
};

// ---- config -----------------------------------------------------------------

// Flat "key = value" file. '#' starts a comment, blank lines are ignored,
// keys are unique. The keys experiment, seed, trials, workers and output_dir
// are run settings; everything else is an experiment parameter.
struct ExperimentConfig {
    std::string experiment;
    std::map<std::string, std::string> params;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> workers;
    std::optional<std::string> output_dir;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::filesystem::path& path);

// Strict numeric parsing; throws ConfigError naming the key.
double parse_double(const std::string& key, const std::string& value);
std::int64_t parse_int(const std::string& key, const std::string& value);
std::uint64_t parse_uint64(const std::string& key, const std::string& value);
// Comma-separated values, or linspace(a, b, n) / logspace(a, b, n) with
// endpoints given as values.
std::vector<double> parse_double_list(const std::string& key, const std::string& value);
std::vector<std::string> parse_string_list(const std::string& value);

// Experiment parameters: defaults overlaid with user values. Unknown user
// keys are rejected at construction.
class ParamSet {
public:
    ParamSet(const std::vector<std::pair<std::string, std::string>>& defaults,
             const std::map<std::string, std::string>& overrides);

    const std::string& str(const std::string& key) const;
    double num(const std::string& key) const;
    std::int64_t integer(const std::string& key) const;
    std::size_t count(const std::string& key) const; // integer >= 1
    bool flag(const std::string& key) const;
    std::vector<double> nums(const std::string& key) const;
    std::vector<std::size_t> counts(const std::string& key) const;
    std::vector<std::string> strs(const std::string& key) const;

    // Resolved key/value pairs in default order.
    const std::vector<std::pair<std::string, std::string>>& resolved() const noexcept { return values_; }

private:
    std::vector<std::pair<std::string, std::string>> values_;
};

// ---- CSV --------------------------------------------------------------------

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add(std::vector<double> row);
};

// "# key: value" lines followed by the header row and one row per record.
// Values are printed with %.17g; non-finite values throw Error.
std::string format_csv(const Table& t, const std::vector<std::pair<std::string, std::string>>& meta);
void write_csv(const std::filesystem::path& path, const Table& t,
               const std::vector<std::pair<std::string, std::string>>& meta);

struct CsvFile {
    std::vector<std::pair<std::string, std::string>> meta;
    Table table;
};
CsvFile read_csv(const std::filesystem::path& path);
CsvFile parse_csv(const std::string& text);

// ---- registry ---------------------------------------------------------------

struct RunContext {
    std::uint64_t seed = 1;
    std::size_t trials = 1;
    std::size_t workers = 1;
};

using Recipe = std::vector<Table> (*)(const ParamSet&, const RunContext&);

struct ExperimentInfo {
    std::string name;
    std::string figures;
    std::string summary;
    std::vector<std::pair<std::string, std::string>> defaults;
    std::size_t default_trials = 1;
    std::vector<std::string> outputs; // "table: col, col, ..." lines
    Recipe run = nullptr;
};

const std::vector<ExperimentInfo>& registry();
const ExperimentInfo& find_experiment(const std::string& name);

// ---- runner -----------------------------------------------------------------

std::string version_string();

struct RunResult {
    std::filesystem::path output_dir;
    std::vector<std::filesystem::path> files;
};

inline constexpr std::uint64_t kDefaultSeed = 1;
inline constexpr const char* kOutputEnv = "ISAC_BENCH_OUT";

// Output directory: config value, else $ISAC_BENCH_OUT, else "isac-out".
// Writes <experiment>_<table>.csv for each table, <experiment>_manifest.json
// and <experiment>_resolved.cfg, a config that reproduces the run.
RunResult run(const ExperimentConfig& cfg);

// Maps an exception from run() to the CLI exit code.
int exit_code_for(const std::exception& e) noexcept;

} // namespace isac::experiment
