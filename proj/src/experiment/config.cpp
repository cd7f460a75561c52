#include "isac/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace isac::experiment {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ','))
        out.push_back(trim(cur));
    if (!s.empty() && s.back() == ',')
        out.emplace_back();
    return out;
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text)
{
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::map<std::string, std::string> seen;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (!seen.emplace(key, value).second)
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");

        if (key == "experiment")
            cfg.experiment = value;
        else if (key == "seed")
            cfg.seed = parse_uint64(key, value);
        else if (key == "trials") {
            const auto t = parse_int(key, value);
            if (t < 1)
                throw ConfigError("trials must be at least 1");
            cfg.trials = static_cast<std::size_t>(t);
        } else if (key == "workers") {
            const auto w = parse_int(key, value);
            if (w < 1)
                throw ConfigError("workers must be at least 1");
            cfg.workers = static_cast<std::size_t>(w);
        } else if (key == "output_dir")
            cfg.output_dir = value;
        else
            cfg.params[key] = value;
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

double parse_double(const std::string& key, const std::string& value)
{
    const std::string v = trim(value);
    if (v.empty())
        throw ConfigError("parameter '" + key + "' is empty");
    char* end = nullptr;
    errno = 0;
    const double d = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(d))
        throw ConfigError("parameter '" + key + "': '" + v + "' is not a finite number");
    return d;
}

std::int64_t parse_int(const std::string& key, const std::string& value)
{
    const std::string v = trim(value);
    char* end = nullptr;
    errno = 0;
    const long long i = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE)
        throw ConfigError("parameter '" + key + "': '" + v + "' is not an integer");
    return static_cast<std::int64_t>(i);
}

std::uint64_t parse_uint64(const std::string& key, const std::string& value)
{
    const std::string v = trim(value);
    char* end = nullptr;
    errno = 0;
    if (v.empty() || v.front() == '-')
        throw ConfigError("parameter '" + key + "': '" + v + "' is not an unsigned integer");
    const unsigned long long u = std::strtoull(v.c_str(), &end, 0);
    if (end != v.c_str() + v.size() || errno == ERANGE)
        throw ConfigError("parameter '" + key + "': '" + v + "' is not an unsigned integer");
    return static_cast<std::uint64_t>(u);
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value)
{
    const std::string v = trim(value);
    for (const char* fn : {"linspace", "logspace"}) {
        const std::string prefix = std::string(fn) + "(";
        if (v.rfind(prefix, 0) != 0)
            continue;
        if (v.back() != ')')
            throw ConfigError("parameter '" + key + "': missing ')'");
        const auto args = split_commas(v.substr(prefix.size(), v.size() - prefix.size() - 1));
        if (args.size() != 3)
            throw ConfigError("parameter '" + key + "': " + fn + " takes (start, stop, count)");
        const double a = parse_double(key, args[0]);
        const double b = parse_double(key, args[1]);
        const auto n = parse_int(key, args[2]);
        if (n < 1)
            throw ConfigError("parameter '" + key + "': count must be at least 1");
        const bool log = fn[1] == 'o';
        if (log && !(a > 0.0 && b > 0.0))
            throw ConfigError("parameter '" + key + "': logspace endpoints must be positive");
        std::vector<double> out(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i) {
            const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
            out[static_cast<std::size_t>(i)] =
                log ? std::pow(10.0, std::log10(a) + f * (std::log10(b) - std::log10(a))) : a + f * (b - a);
        }
        if (n > 1)
            out.back() = b;
        return out;
    }
    std::vector<double> out;
    for (const auto& item : split_commas(v))
        out.push_back(parse_double(key, item));
    if (out.empty())
        throw ConfigError("parameter '" + key + "' is an empty list");
    return out;
}

std::vector<std::string> parse_string_list(const std::string& value)
{
    return split_commas(trim(value));
}

ParamSet::ParamSet(const std::vector<std::pair<std::string, std::string>>& defaults,
                   const std::map<std::string, std::string>& overrides)
    : values_(defaults)
{
    for (const auto& [k, v] : overrides) {
        auto it = std::find_if(values_.begin(), values_.end(), [&](const auto& kv) { return kv.first == k; });
        if (it == values_.end())
            throw ConfigError("unknown parameter '" + k + "'");
        it->second = v;
    }
}

const std::string& ParamSet::str(const std::string& key) const
{
    for (const auto& [k, v] : values_)
        if (k == key)
            return v;
    throw ConfigError("missing parameter '" + key + "'");
}

double ParamSet::num(const std::string& key) const { return parse_double(key, str(key)); }

std::int64_t ParamSet::integer(const std::string& key) const { return parse_int(key, str(key)); }

std::size_t ParamSet::count(const std::string& key) const
{
    const auto i = integer(key);
    if (i < 1)
        throw ConfigError("parameter '" + key + "' must be at least 1");
    return static_cast<std::size_t>(i);
}

bool ParamSet::flag(const std::string& key) const
{
    std::string v;
    for (char c : str(key))
        v += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (v == "1" || v == "true" || v == "yes" || v == "on")
        return true;
    if (v == "0" || v == "false" || v == "no" || v == "off")
        return false;
    throw ConfigError("parameter '" + key + "': '" + str(key) + "' is not a boolean");
}

std::vector<double> ParamSet::nums(const std::string& key) const { return parse_double_list(key, str(key)); }

std::vector<std::size_t> ParamSet::counts(const std::string& key) const
{
    std::vector<std::size_t> out;
    for (const auto& item : strs(key)) {
        const auto i = parse_int(key, item);
        if (i < 1)
            throw ConfigError("parameter '" + key + "': entries must be at least 1");
        out.push_back(static_cast<std::size_t>(i));
    }
    if (out.empty())
        throw ConfigError("parameter '" + key + "' is an empty list");
    return out;
}

std::vector<std::string> ParamSet::strs(const std::string& key) const
{
    auto out = parse_string_list(str(key));
    for (const auto& s : out)
        if (s.empty())
            throw ConfigError("parameter '" + key + "' has an empty list entry");
    return out;
}

} // namespace isac::experiment
