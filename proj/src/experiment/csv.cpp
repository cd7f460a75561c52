#include "isac/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace isac::experiment {

void Table::add(std::vector<double> row)
{
    if (row.size() != columns.size())
        throw DimensionError("table '" + name + "': row has " + std::to_string(row.size()) + " values, expected " +
                             std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

namespace {

std::string format_value(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v); // no "-0"
    return buf;
}

} // namespace

std::string format_csv(const Table& t, const std::vector<std::pair<std::string, std::string>>& meta)
{
    std::string out;
    for (const auto& [k, v] : meta)
        out += "# " + k + ": " + v + "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (t.columns[c].find_first_of(",\n\"") != std::string::npos)
            throw Error("column name '" + t.columns[c] + "' contains a reserved character");
        out += (c ? "," : "") + t.columns[c];
    }
    out += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (!std::isfinite(row[c]))
                throw Error("table '" + t.name + "' column '" + t.columns[c] + "' holds a non-finite value");
            out += (c ? "," : "") + format_value(row[c]);
        }
        out += "\n";
    }
    return out;
}

void write_csv(const std::filesystem::path& path, const Table& t,
               const std::vector<std::pair<std::string, std::string>>& meta)
{
    const std::string text = format_csv(t, meta);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw OutputError("cannot write '" + path.string() + "'");
    out << text;
    if (!out)
        throw OutputError("write failed for '" + path.string() + "'");
}

CsvFile parse_csv(const std::string& text)
{
    CsvFile f;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (!header && line.rfind("# ", 0) == 0) {
            const auto colon = line.find(": ");
            if (colon == std::string::npos)
                throw Error("line " + std::to_string(lineno) + ": malformed metadata");
            f.meta.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        if (line.back() == ',')
            cells.emplace_back();
        if (!header) {
            f.table.columns = cells;
            header = true;
            continue;
        }
        if (cells.size() != f.table.columns.size())
            throw DimensionError("line " + std::to_string(lineno) + ": expected " +
                                 std::to_string(f.table.columns.size()) + " fields");
        std::vector<double> row;
        for (const auto& c : cells)
            row.push_back(parse_double(f.table.columns[row.size()], c));
        f.table.rows.push_back(std::move(row));
    }
    if (!header)
        throw Error("CSV has no header row");
    return f;
}

CsvFile read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    CsvFile f = parse_csv(ss.str());
    f.table.name = path.stem().string();
    return f;
}

} // namespace isac::experiment
