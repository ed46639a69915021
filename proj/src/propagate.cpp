#include "ffscale/propagate.hpp"

#include <cmath>

namespace ffscale::propagate {

using linalg::Complex;
using linalg::ComplexMatrix;

namespace {

int step_count(double t0, double t1, double dt) {
    if (!(dt > 0.0)) throw DomainError("propagate: dt must be positive");
    if (!(t1 > t0)) throw DomainError("propagate: t1 must exceed t0");
    const double n = (t1 - t0) / dt;
    const int rounded = static_cast<int>(std::lround(n));
    if (std::abs(n - rounded) > 1e-9 * std::max(1.0, n))
        throw DomainError("propagate: (t1 - t0) must be an integer number of dt steps");
    return rounded;
}

void check_normalized(const State& psi) {
    if (std::abs(linalg::vec_norm(psi) - 1.0) > 1e-10)
        throw DomainError("propagate: initial state is not normalized");
}

std::vector<double> computational_populations(const State& psi) {
    std::vector<double> p(psi.size());
    for (size_t i = 0; i < psi.size(); ++i) p[i] = std::norm(psi[i]);
    return p;
}

void record(StateTrajectory& traj, double t, const State& psi, const PopulationFn* populations) {
    traj.times.push_back(t);
    traj.states.push_back(psi);
    traj.populations.push_back(populations ? (*populations)(t, psi)
                                           : computational_populations(psi));
}

}  // namespace

StateTrajectory evolve(const Generator& gen, const State& psi0, double t0, double t1, double dt,
                       double hbar, const PopulationFn* populations) {
    check_normalized(psi0);
    const int n = step_count(t0, t1, dt);
    StateTrajectory traj;
    State psi = psi0;
    record(traj, t0, psi, populations);
    for (int k = 0; k < n; ++k) {
        const double t = t0 + k * dt;
        const ComplexMatrix u = linalg::exp_unitary(gen(t + 0.5 * dt), dt / hbar);
        psi = linalg::matvec(u, psi);
        record(traj, t0 + (k + 1) * dt, psi, populations);
    }
    return traj;
}

StateTrajectory rk4_oracle(const Generator& gen, const State& psi0, double t0, double t1, double dt,
                           double hbar) {
    check_normalized(psi0);
    const int n = step_count(t0, t1, dt);
    const Complex mi_over_hbar(0.0, -1.0 / hbar);

    auto deriv = [&](double t, const State& psi) {
        State d = linalg::matvec(gen(t).matrix(), psi);
        for (auto& v : d) v *= mi_over_hbar;
        return d;
    };
    auto axpy = [](const State& x, double a, const State& y) {
        State r = x;
        for (size_t i = 0; i < r.size(); ++i) r[i] += a * y[i];
        return r;
    };

    StateTrajectory traj;
    State psi = psi0;
    record(traj, t0, psi, nullptr);
    for (int k = 0; k < n; ++k) {
        const double t = t0 + k * dt;
        const State k1 = deriv(t, psi);
        const State k2 = deriv(t + 0.5 * dt, axpy(psi, 0.5 * dt, k1));
        const State k3 = deriv(t + 0.5 * dt, axpy(psi, 0.5 * dt, k2));
        const State k4 = deriv(t + dt, axpy(psi, dt, k3));
        for (size_t i = 0; i < psi.size(); ++i)
            psi[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        record(traj, t0 + (k + 1) * dt, psi, nullptr);
    }
    return traj;
}

std::vector<double> populations_in_frame(const spectral::SpectralFrame& frame, const State& psi) {
    const int d = frame.states.dim();
    if (static_cast<int>(psi.size()) != d)
        throw DimensionMismatch("populations_in_frame: dimension mismatch");
    std::vector<double> p(d);
    for (int n = 0; n < d; ++n) {
        Complex z = 0.0;
        for (int i = 0; i < d; ++i) z += std::conj(frame.states(i, n)) * psi[i];
        p[n] = std::norm(z);
    }
    return p;
}

}  // namespace ffscale::propagate
