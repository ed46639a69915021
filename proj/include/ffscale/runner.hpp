#ifndef FFSCALE_RUNNER_HPP
#define FFSCALE_RUNNER_HPP

#include <limits>
#include <optional>

#include "ffscale/propagate.hpp"
#include "ffscale/scenario.hpp"

namespace ffscale::harness {

struct RunOptions {
    // When set, every frame built during the run gets a random diagonal
    // re-gauging drawn from this seed. Populations must not move.
    std::optional<std::uint64_t> gauge_twist_seed;
    bool collect_assemblies = true;
};

struct RunStats {
    double max_population_deviation = 0.0;  // |p_ff(t) - p_ref(s(t))| over grid, levels
    double max_norm_drift = 0.0;
    double max_unitarity_defect = 0.0;
    double avg_nad_drive_norm = 0.0;        // mean ||rate * h_nad||_F over steps
    double min_gap = std::numeric_limits<double>::infinity();
    double final_phase_span = 0.0;          // max_nm |f_n - f_m| at t_ff
    double max_route_residual = 0.0;        // route = both
    int route_steps_compared = 0;
    int route_steps_skipped = 0;
    bool rate_jumps = false;
};

struct RunResult {
    propagate::StateTrajectory reference;     // psi_ref(s(t)) on the wall grid
    propagate::StateTrajectory fast_forward;
    // what the integrator consumed (midpoint assemblies), in step order
    std::vector<assembler::FFAssembly> step_assemblies;
    // direct-route assemblies at the grid times (including t = 0)
    std::vector<assembler::FFAssembly> grid_assemblies;
    RunStats stats;
};

// Evolves the rescaled and reference dynamics side by side and records
// instantaneous-eigenbasis populations for both against the frame at s(t).
RunResult run_scenario(const Scenario& sc, const RunOptions& opts = {});

// Initial state resolved against the frame at s(0).
propagate::State initial_state(const Scenario& sc, const spectral::SpectralFrame& frame0);

}  // namespace ffscale::harness

#endif
