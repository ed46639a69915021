#ifndef FFSCALE_ASSEMBLER_HPP
#define FFSCALE_ASSEMBLER_HPP

#include <array>
#include <span>
#include <vector>

#include "ffscale/schedule.hpp"
#include "ffscale/spectral.hpp"

namespace ffscale::assembler {

// Per-level phases f_n(t), integrated along the run with
// hbar df_n/dt = (1 - ds/dt) E_n(s). Stored unreduced; only wrapped
// differences ever enter matrix elements.
struct PhaseAccumulator {
    double t = 0.0;
    std::vector<double> f;

    static PhaseAccumulator zero(int dim, double t0 = 0.0) {
        return {t0, std::vector<double>(dim, 0.0)};
    }
};

// One Simpson step over [t, t+dt]: integrand sampled at t, t+dt/2, t+dt.
// energies[i] holds the tracked-level energies at sample i; rates[i] the
// matching ds/dt values.
PhaseAccumulator advance_phases(const PhaseAccumulator& acc, double dt,
                                const std::array<std::vector<double>, 3>& energies,
                                const std::array<double, 3>& rates, double hbar = 1.0);

// Off-diagonal term that re-creates the original-time-scale transitions:
// elements -e^{-i(f_n - f_m)} <n|H_cd|m>, zero diagonal.
linalg::HermitianMatrix nad_term(const spectral::SpectralFrame& frame,
                                 const linalg::HermitianMatrix& h_cd, std::span<const double> f);

// Snapshot of everything assembled at one wall time.
struct FFAssembly {
    double t = 0.0;
    double s = 0.0;
    double rate = 0.0;
    spectral::SpectralFrame frame;
    linalg::HermitianMatrix h_ref_s;
    linalg::HermitianMatrix h_cd;
    linalg::HermitianMatrix h_nad;
    linalg::HermitianMatrix h_ff;  // h_ref_s + rate (h_cd + h_nad)
    std::vector<double> f;
};

struct AssembleOptions {
    double hbar = 1.0;
    spectral::FrameOptions frame;
};

// Spectral route: frame, counterdiabatic and phase-dressed terms from their
// element formulas.
FFAssembly assemble_direct(const spectral::ReferenceHamiltonian& h,
                           const schedule::RescalingSchedule& sched, const PhaseAccumulator& acc,
                           double t, const spectral::SpectralFrame* prev_frame = nullptr,
                           const AssembleOptions& opts = {});

// O(t) = i sum_n f_n |n><n| (anti-Hermitian).
linalg::ComplexMatrix gauge_generator(const spectral::SpectralFrame& frame,
                                      std::span<const double> f);

// dO/dt from df/dt on the diagonal and the perturbation-theory eigenvector
// velocity rate <m|dH|n>/(E_n - E_m) off it. Anti-Hermitian.
linalg::ComplexMatrix d_gauge_generator_dt(const spectral::SpectralFrame& frame,
                                           std::span<const double> f, std::span<const double> df_dt,
                                           double rate, const linalg::HermitianMatrix& dh);

struct SeriesOptions {
    double tol = 1e-10;
    int k_max = 64;
    // refuse outright past this span of stored phase differences
    double max_phase_span = 30.0;
    double hbar = 1.0;
    spectral::FrameOptions frame;
};

// Commutator route: h_ff = rate H_ref(s) - i hbar sum_k (-1)^k/(k+1)!
// (ad_O)^k dO, truncated when a term's contribution drops below
// tol*||h_ff||. Phases are reduced by whole multiples of 2 pi per level
// before building O (e^O is invariant under such shifts because the
// projectors have spectrum {0,1}), which keeps the alternating series short.
// Throws SeriesNotConverged on refusal or k_max exhaustion.
FFAssembly assemble_series(const spectral::ReferenceHamiltonian& h,
                           const schedule::RescalingSchedule& sched, const PhaseAccumulator& acc,
                           double t, const spectral::SpectralFrame* prev_frame = nullptr,
                           const SeriesOptions& opts = {});

// Least-squares coefficients of m over a Hermitian operator basis, with the
// Frobenius residual of the fit.
struct Decomposition {
    std::vector<double> coeffs;
    double residual = 0.0;
};

Decomposition decompose_over_basis(const linalg::ComplexMatrix& m,
                                   const std::vector<linalg::HermitianMatrix>& basis);

}  // namespace ffscale::assembler

#endif
