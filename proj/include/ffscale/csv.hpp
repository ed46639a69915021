#ifndef FFSCALE_CSV_HPP
#define FFSCALE_CSV_HPP

#include <ostream>
#include <string>

#include "ffscale/runner.hpp"
#include "ffscale/sweep.hpp"

namespace ffscale::harness {

// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

// Header: t,s,ds_dt, p_ref_<n>.., p_ff_<n>.., f_<n>.., and when a
// decomposition basis is configured cd_<name>.., nad_<name>..,
// cd_residual,nad_residual.
void write_trajectory_csv(std::ostream& os, const Scenario& sc, const RunResult& run);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

// Run metadata (schedule kind, rate-jump flag, integrator settings, summary
// statistics) as a small JSON document.
void write_metadata_json(std::ostream& os, const Scenario& sc, const RunResult& run);

}  // namespace ffscale::harness

#endif
