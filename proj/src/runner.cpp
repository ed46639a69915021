#include "ffscale/runner.hpp"

#include <cmath>

namespace ffscale::harness {

using assembler::FFAssembly;
using assembler::PhaseAccumulator;
using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::HermitianMatrix;
using propagate::State;
using spectral::SpectralFrame;

namespace {

double unitarity_defect(const ComplexMatrix& u) {
    return linalg::op_norm(u.adjoint() * u - ComplexMatrix::identity(u.dim()));
}

double span(std::span<const double> f) {
    double lo = f[0], hi = f[0];
    for (double v : f) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi - lo;
}

}  // namespace

State initial_state(const Scenario& sc, const SpectralFrame& frame0) {
    if (sc.initial_amplitudes) return *sc.initial_amplitudes;
    return frame0.state(*sc.initial_level);
}

RunResult run_scenario(const Scenario& sc, const RunOptions& opts) {
    const auto& h = sc.reference;
    const auto& sched = sc.sched();
    const double dt = sc.dt;
    const int n_steps = static_cast<int>(std::lround(sched.t_ff() / dt));
    const int dim = h.dim;

    assembler::AssembleOptions aopts;
    aopts.hbar = sc.hbar;
    aopts.frame = sc.frame_options();
    assembler::SeriesOptions sopts;
    sopts.tol = sc.series_tol;
    sopts.k_max = sc.series_k_max;
    sopts.hbar = sc.hbar;
    sopts.frame = aopts.frame;

    std::uint64_t twist_state = opts.gauge_twist_seed.value_or(0);
    auto build_frame = [&](double s, const SpectralFrame* prev) {
        SpectralFrame f = spectral::frame_at(h, s, prev, aopts.frame);
        if (opts.gauge_twist_seed) spectral::apply_random_gauge(f, twist_state);
        return f;
    };
    // assembles at time t from an already-built frame
    auto assemble_here = [&](double t, const SpectralFrame& frame, const PhaseAccumulator& acc) {
        FFAssembly a;
        const auto [s, rate] = sched.eval(t);
        a.t = t;
        a.s = s;
        a.rate = rate;
        a.frame = frame;
        a.h_ref_s = hamiltonian_at(h, s);
        a.h_cd = spectral::cd_term(a.frame, dh_ds(h, s), sc.hbar);
        a.h_nad = assembler::nad_term(a.frame, a.h_cd, acc.f);
        a.h_ff = HermitianMatrix(a.h_ref_s.matrix() + rate * (a.h_cd.matrix() + a.h_nad.matrix()));
        a.f = acc.f;
        return a;
    };

    RunResult out;
    out.stats.rate_jumps = sched.has_rate_jumps();

    // energies (tracked ascending) at a rescaled time; cached across the
    // shared node of consecutive steps
    auto energies_at = [&](double s) {
        return linalg::hermitian_eig(hamiltonian_at(h, s), sc.jacobi).values;
    };

    const auto [s0, rate0] = sched.eval(0.0);
    SpectralFrame frame0 = build_frame(s0, nullptr);
    out.stats.min_gap = std::min(out.stats.min_gap, frame0.min_gap);

    State psi_ff = initial_state(sc, frame0);
    State psi_ref = psi_ff;
    PhaseAccumulator acc = PhaseAccumulator::zero(dim);

    auto record_point = [&](double t, const SpectralFrame& frame, const PhaseAccumulator& acc_t) {
        const auto p_ff = propagate::populations_in_frame(frame, psi_ff);
        const auto p_ref = propagate::populations_in_frame(frame, psi_ref);
        out.fast_forward.times.push_back(t);
        out.fast_forward.states.push_back(psi_ff);
        out.fast_forward.populations.push_back(p_ff);
        out.reference.times.push_back(t);
        out.reference.states.push_back(psi_ref);
        out.reference.populations.push_back(p_ref);
        for (int n = 0; n < dim; ++n)
            out.stats.max_population_deviation =
                std::max(out.stats.max_population_deviation, std::abs(p_ff[n] - p_ref[n]));
        if (opts.collect_assemblies) out.grid_assemblies.push_back(assemble_here(t, frame, acc_t));
    };

    record_point(0.0, frame0, acc);

    SpectralFrame prev = frame0;
    double walker_s = s0;
    std::vector<double> e_node0 = energies_at(s0);
    double nad_norm_sum = 0.0;

    for (int k = 0; k < n_steps; ++k) {
        const double t = k * dt;
        const double t1 = (k + 1) * dt;

        // five schedule nodes per step; quadrature interval ends take the
        // left-limit rate so piecewise knots on the grid stay exact
        const auto n0 = sched.eval(t);
        const auto n1 = sched.eval(t + 0.25 * dt);
        const auto n2l = sched.eval_left(t + 0.5 * dt);
        const auto n2r = sched.eval(t + 0.5 * dt);
        const auto n3 = sched.eval(t + 0.75 * dt);
        const auto n4l = sched.eval_left(t1);
        const auto n4r = sched.eval(t1);

        const std::vector<double> e1 = energies_at(n1.s);
        const std::vector<double> e2 = energies_at(n2r.s);
        const std::vector<double> e3 = energies_at(n3.s);
        const std::vector<double> e4 = energies_at(n4r.s);

        const PhaseAccumulator acc_m = assembler::advance_phases(
            acc, 0.5 * dt, {e_node0, e1, e2}, {n0.rate, n1.rate, n2l.rate}, sc.hbar);

        // midpoint generator
        SpectralFrame frame_m = build_frame(n2r.s, &prev);
        prev = frame_m;
        out.stats.min_gap = std::min(out.stats.min_gap, frame_m.min_gap);
        FFAssembly asm_m;
        if (sc.route == Route::series) {
            asm_m = assembler::assemble_series(h, sched, acc_m, t + 0.5 * dt, &frame_m, sopts);
        } else {
            asm_m = assemble_here(t + 0.5 * dt, frame_m, acc_m);
        }
        if (sc.route == Route::both) {
            if (span(acc_m.f) <= sopts.max_phase_span) {
                try {
                    const FFAssembly asm_s =
                        assembler::assemble_series(h, sched, acc_m, t + 0.5 * dt, &frame_m, sopts);
                    out.stats.max_route_residual =
                        std::max(out.stats.max_route_residual,
                                 linalg::op_norm(asm_m.h_ff.matrix() - asm_s.h_ff.matrix()));
                    ++out.stats.route_steps_compared;
                } catch (const SeriesNotConverged&) {
                    ++out.stats.route_steps_skipped;
                }
            } else {
                ++out.stats.route_steps_skipped;
            }
        }
        nad_norm_sum += std::abs(asm_m.rate) * linalg::op_norm(asm_m.h_nad);

        const ComplexMatrix u = linalg::exp_unitary(asm_m.h_ff, dt / sc.hbar, sc.jacobi);
        out.stats.max_unitarity_defect = std::max(out.stats.max_unitarity_defect, unitarity_defect(u));
        psi_ff = linalg::matvec(u, psi_ff);
        out.stats.max_norm_drift =
            std::max(out.stats.max_norm_drift, std::abs(linalg::vec_norm(psi_ff) - 1.0));
        if (opts.collect_assemblies) out.step_assemblies.push_back(std::move(asm_m));

        acc = assembler::advance_phases(acc_m, 0.5 * dt, {e2, e3, e4},
                                        {n2r.rate, n3.rate, n4l.rate}, sc.hbar);

        // reference walker: one midpoint step along the induced s-interval;
        // signed steps retrace themselves across pauses and rewinds
        const double ds = n4r.s - walker_s;
        if (ds != 0.0) {
            const HermitianMatrix h_mid = hamiltonian_at(h, walker_s + 0.5 * ds);
            psi_ref = linalg::matvec(linalg::exp_unitary(h_mid, ds / sc.hbar, sc.jacobi), psi_ref);
            walker_s = n4r.s;
        }

        SpectralFrame frame_1 = build_frame(n4r.s, &prev);
        prev = frame_1;
        out.stats.min_gap = std::min(out.stats.min_gap, frame_1.min_gap);
        record_point(t1, frame_1, acc);

        e_node0 = e4;
    }

    out.stats.avg_nad_drive_norm = n_steps > 0 ? nad_norm_sum / n_steps : 0.0;
    out.stats.final_phase_span = span(acc.f);
    return out;
}

}  // namespace ffscale::harness
