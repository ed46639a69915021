#include "ffscale/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace ffscale::harness {

using linalg::HermitianMatrix;
using propagate::State;

Scenario rescale_scenario(const Scenario& base, double t_ref) {
    if (!(t_ref > 0.0)) throw ConfigError("sweep: t_ref must be positive");
    Scenario sc = base;
    const double alpha = base.reference.t_ref / t_ref;
    for (auto& s : sc.reference.schedules) s = s.rescale_time(alpha);
    if (sc.hx) sc.hx = sc.hx->rescale_time(alpha);
    if (sc.hz) sc.hz = sc.hz->rescale_time(alpha);
    sc.reference.t_ref = t_ref;
    sc.rescaling = schedule::RescalingSchedule::linear(t_ref, base.sched().t_ff());
    sc.route = Route::direct;
    return sc;
}

namespace {

SweepRow run_row(const Scenario& base, double t_ref) {
    SweepRow row;
    row.t_ref = t_ref;
    const Scenario sc = rescale_scenario(base, t_ref);
    RunOptions opts;
    opts.collect_assemblies = false;
    const RunResult ff = run_scenario(sc, opts);

    // pure counterdiabatic protocol: H_ref(s) + rate H_cd(s), dressed term
    // dropped; frames built statelessly (the operator is gauge-invariant)
    const auto& h = sc.reference;
    const auto frame_opts = sc.frame_options();
    propagate::Generator cd_gen = [&](double t) {
        const auto [s, rate] = sc.sched().eval(t);
        const auto frame = spectral::frame_at(h, s, nullptr, frame_opts);
        const HermitianMatrix h_cd = spectral::cd_term(frame, dh_ds(h, s), sc.hbar);
        return HermitianMatrix(hamiltonian_at(h, s).matrix() + rate * h_cd.matrix());
    };
    const auto frame0 = spectral::frame_at(h, sc.sched().eval(0.0).s, nullptr, frame_opts);
    const State psi0 = initial_state(sc, frame0);
    const auto cd_traj = propagate::evolve(cd_gen, psi0, 0.0, sc.sched().t_ff(), sc.dt, sc.hbar);

    const State& a = ff.fast_forward.states.back();
    const State& b = cd_traj.states.back();
    row.infidelity = 1.0 - std::norm(linalg::vdot(b, a));
    row.avg_nad_drive_norm = ff.stats.avg_nad_drive_norm;
    row.min_gap = ff.stats.min_gap;
    row.phase_lower_bound = t_ref * ff.stats.min_gap;
    row.final_phase_span = ff.stats.final_phase_span;
    return row;
}

int thread_cap(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("FFSCALE_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

std::vector<SweepRow> sweep_adiabatic(const Scenario& base, const std::vector<double>& t_refs,
                                      int max_threads) {
    std::vector<SweepRow> rows(t_refs.size());
    const int cap = thread_cap(max_threads);

    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    const int workers = std::min<int>(cap, static_cast<int>(t_refs.size()));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= t_refs.size()) return;
                try {
                    rows[i] = run_row(base, t_refs[i]);
                } catch (const std::exception& e) {
                    rows[i].t_ref = t_refs[i];
                    rows[i].status = e.what();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    return rows;
}

}  // namespace ffscale::harness
