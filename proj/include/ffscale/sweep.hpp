#ifndef FFSCALE_SWEEP_HPP
#define FFSCALE_SWEEP_HPP

#include <string>
#include <vector>

#include "ffscale/runner.hpp"

namespace ffscale::harness {

struct SweepRow {
    double t_ref = 0.0;
    double infidelity = 0.0;          // FF final state vs pure-CD final state
    double avg_nad_drive_norm = 0.0;  // mean ||(ds/dt) H_nad||_F along the run
    double phase_lower_bound = 0.0;   // t_ref * min gap: the oscillation scale
    double final_phase_span = 0.0;
    double min_gap = 0.0;
    std::string status = "ok";        // error message when a row fails
};

// Stretches the base protocol over each t_ref (same parameter path,
// traversed slower), runs the rescaled dynamics against a pure
// counterdiabatic protocol with the dressed term dropped, and tabulates how
// the two converge as the reference becomes adiabatic. t_ff is taken from
// the base scenario. Rows run concurrently; FFSCALE_THREADS caps the pool.
std::vector<SweepRow> sweep_adiabatic(const Scenario& base, const std::vector<double>& t_refs,
                                      int max_threads = 0);

// Scenario for one sweep row (exposed for tests).
Scenario rescale_scenario(const Scenario& base, double t_ref);

}  // namespace ffscale::harness

#endif
