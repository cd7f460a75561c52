#pragma once

#include "isac/experiment.hpp"

namespace isac::experiment::recipes {

std::vector<Table> isl_cdf(const ParamSet&, const RunContext&);
std::vector<Table> isl_gap(const ParamSet&, const RunContext&);
std::vector<Table> otfs_pilot_cdf(const ParamSet&, const RunContext&);
std::vector<Table> se_vs_distance(const ParamSet&, const RunContext&);
std::vector<Table> gap_region(const ParamSet&, const RunContext&);
std::vector<Table> allocation_demo(const ParamSet&, const RunContext&);
std::vector<Table> tradeoff_sweep(const ParamSet&, const RunContext&);
std::vector<Table> solver_compare(const ParamSet&, const RunContext&);
std::vector<Table> crb_validate(const ParamSet&, const RunContext&);
std::vector<Table> psl_law(const ParamSet&, const RunContext&);
std::vector<Table> imaging_convergence(const ParamSet&, const RunContext&);

} // namespace isac::experiment::recipes
