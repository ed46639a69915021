#include "ffscale/csv.hpp"

#include <charconv>

#include "json.hpp"

namespace ffscale::harness {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& os, const Scenario& sc, const RunResult& run) {
    const int dim = sc.reference.dim;
    const bool decomposed = !sc.decomposition_basis.empty();

    os << "t,s,ds_dt";
    for (int n = 0; n < dim; ++n) os << ",p_ref_" << n;
    for (int n = 0; n < dim; ++n) os << ",p_ff_" << n;
    for (int n = 0; n < dim; ++n) os << ",f_" << n;
    if (decomposed) {
        for (const auto& name : sc.decomposition_names) os << ",cd_" << name;
        for (const auto& name : sc.decomposition_names) os << ",nad_" << name;
        os << ",cd_residual,nad_residual";
    }
    os << "\n";

    const size_t rows = run.grid_assemblies.size();
    for (size_t i = 0; i < rows; ++i) {
        if (i % static_cast<size_t>(sc.output_stride) != 0 && i + 1 != rows) continue;
        const auto& a = run.grid_assemblies[i];
        os << format_double(a.t) << ',' << format_double(a.s) << ',' << format_double(a.rate);
        for (int n = 0; n < dim; ++n) os << ',' << format_double(run.reference.populations[i][n]);
        for (int n = 0; n < dim; ++n) os << ',' << format_double(run.fast_forward.populations[i][n]);
        for (int n = 0; n < dim; ++n) os << ',' << format_double(a.f[n]);
        if (decomposed) {
            const auto cd = assembler::decompose_over_basis(a.h_cd.matrix(), sc.decomposition_basis);
            const auto nad = assembler::decompose_over_basis(a.h_nad.matrix(), sc.decomposition_basis);
            for (double c : cd.coeffs) os << ',' << format_double(c);
            for (double c : nad.coeffs) os << ',' << format_double(c);
            os << ',' << format_double(cd.residual) << ',' << format_double(nad.residual);
        }
        os << "\n";
    }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "t_ref,infidelity,avg_nad_drive_norm,phase_lower_bound,final_phase_span,min_gap,status\n";
    for (const auto& r : rows) {
        os << format_double(r.t_ref) << ',' << format_double(r.infidelity) << ','
           << format_double(r.avg_nad_drive_norm) << ',' << format_double(r.phase_lower_bound)
           << ',' << format_double(r.final_phase_span) << ',' << format_double(r.min_gap) << ','
           << r.status << "\n";
    }
}

void write_metadata_json(std::ostream& os, const Scenario& sc, const RunResult& run) {
    nlohmann::json j;
    j["name"] = sc.name;
    j["hbar"] = sc.hbar;
    j["t_ref"] = sc.reference.t_ref;
    j["t_ff"] = sc.sched().t_ff();
    j["schedule_kind"] = schedule::kind_name(sc.sched().kind());
    j["rate_jumps"] = run.stats.rate_jumps;
    j["dt"] = sc.dt;
    j["route"] = route_name(sc.route);
    j["seed"] = sc.seed;
    j["stats"] = {
        {"max_population_deviation", run.stats.max_population_deviation},
        {"max_norm_drift", run.stats.max_norm_drift},
        {"max_unitarity_defect", run.stats.max_unitarity_defect},
        {"avg_nad_drive_norm", run.stats.avg_nad_drive_norm},
        {"min_gap", run.stats.min_gap},
        {"final_phase_span", run.stats.final_phase_span},
    };
    if (sc.route == Route::both) {
        j["stats"]["max_route_residual"] = run.stats.max_route_residual;
        j["stats"]["route_steps_compared"] = run.stats.route_steps_compared;
        j["stats"]["route_steps_skipped"] = run.stats.route_steps_skipped;
    }
    os << j.dump(2) << "\n";
}

}  // namespace ffscale::harness
