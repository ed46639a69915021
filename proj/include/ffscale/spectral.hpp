#ifndef FFSCALE_SPECTRAL_HPP
#define FFSCALE_SPECTRAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "ffscale/linalg.hpp"

namespace ffscale::spectral {

enum class ScheduleKind { constant, linear, polynomial, tanh_ramp };

// A real coefficient c(t) with its exact analytic derivative.
class CoefficientSchedule {
public:
    static CoefficientSchedule constant(double c);
    static CoefficientSchedule linear(double a, double b);               // a + b t
    static CoefficientSchedule polynomial(std::vector<double> coeffs);   // sum c_k t^k
    static CoefficientSchedule tanh_ramp(double base, double amplitude, double center,
                                         double width);

    double value(double t) const;
    double derivative(double t) const;

    // Same curve traversed with t -> alpha t; used by the adiabatic sweep to
    // stretch a reference protocol over a longer domain (alpha < 1).
    CoefficientSchedule rescale_time(double alpha) const;

    ScheduleKind kind() const { return kind_; }
    const std::vector<double>& params() const { return params_; }

private:
    CoefficientSchedule(ScheduleKind kind, std::vector<double> params)
        : kind_(kind), params_(std::move(params)) {}
    ScheduleKind kind_;
    std::vector<double> params_;
};

// H(t) = sum_k c_k(t) B_k over a fixed Hermitian operator basis, defined for
// s in [0, t_ref].
struct ReferenceHamiltonian {
    int dim = 0;
    std::vector<linalg::HermitianMatrix> basis;
    std::vector<CoefficientSchedule> schedules;
    double t_ref = 0.0;
};

ReferenceHamiltonian make_reference(std::vector<linalg::HermitianMatrix> basis,
                                    std::vector<CoefficientSchedule> schedules, double t_ref);

linalg::HermitianMatrix hamiltonian_at(const ReferenceHamiltonian& h, double s);
linalg::HermitianMatrix dh_ds(const ReferenceHamiltonian& h, double s);

// Instantaneous eigenframe at one rescaled time, gauge-fixed.
struct SpectralFrame {
    double s = 0.0;
    std::vector<double> energies;     // per tracked level
    linalg::ComplexMatrix states;     // eigenvectors as columns
    double min_gap = 0.0;

    linalg::Vector state(int n) const;
};

struct FrameOptions {
    double degeneracy_rel_threshold = 1e-8;  // min_gap <= thr * ||H|| aborts
    double tracking_min_overlap = 0.70710678118654752440;  // 1/sqrt(2)
    linalg::JacobiOptions jacobi;
};

// Eigenframe at s. Without a predecessor, levels are ordered by ascending
// energy and each vector's largest-magnitude component is made real
// positive. With a predecessor, levels are matched by maximal overlap and
// phases are parallel-transported (<n_prev|n> real positive). Throws
// DegenerateSpectrum / AmbiguousTracking.
SpectralFrame frame_at(const ReferenceHamiltonian& h, double s,
                       const SpectralFrame* prev = nullptr, const FrameOptions& opts = {});

// Counterdiabatic term (adiabatic gauge potential): off-diagonal elements
// i hbar <n|dH|m> / (E_m - E_n), zero diagonal, as an operator in the
// computational basis. Gauge-independent.
linalg::HermitianMatrix cd_term(const SpectralFrame& frame, const linalg::HermitianMatrix& dh,
                                double hbar = 1.0);

// Test hook: rotates every eigenvector by a random unit phase. Populations
// and assembled operators must not care.
void apply_random_gauge(SpectralFrame& frame, std::uint64_t& rng_state);

}  // namespace ffscale::spectral

#endif
