#ifndef FFSCALE_PROPAGATE_HPP
#define FFSCALE_PROPAGATE_HPP

#include <functional>
#include <vector>

#include "ffscale/spectral.hpp"

namespace ffscale::propagate {

using State = linalg::Vector;
using Generator = std::function<linalg::HermitianMatrix(double)>;
// Optional populations hook; when absent, populations are taken in the
// computational basis.
using PopulationFn = std::function<std::vector<double>(double t, const State&)>;

struct StateTrajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<std::vector<double>> populations;
};

// Exponential midpoint rule: psi <- e^{-i dt H(t + dt/2)/hbar} psi.
// Norm-preserving per step; global state error O(dt^2).
StateTrajectory evolve(const Generator& gen, const State& psi0, double t0, double t1, double dt,
                       double hbar = 1.0, const PopulationFn* populations = nullptr);

// Classical RK4 on i hbar dpsi/dt = H psi. No renormalization: the norm
// drift is a diagnostic. Global error O(dt^4).
StateTrajectory rk4_oracle(const Generator& gen, const State& psi0, double t0, double t1,
                           double dt, double hbar = 1.0);

// p_n = |<n(s)|psi>|^2
std::vector<double> populations_in_frame(const spectral::SpectralFrame& frame, const State& psi);

}  // namespace ffscale::propagate

#endif
