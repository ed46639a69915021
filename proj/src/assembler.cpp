#include "ffscale/assembler.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ffscale::assembler {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::HermitianMatrix;
using spectral::SpectralFrame;

PhaseAccumulator advance_phases(const PhaseAccumulator& acc, double dt,
                                const std::array<std::vector<double>, 3>& energies,
                                const std::array<double, 3>& rates, double hbar) {
    if (!(dt > 0.0)) throw DomainError("advance_phases: dt must be positive");
    const size_t d = acc.f.size();
    for (const auto& e : energies)
        if (e.size() != d) throw DimensionMismatch("advance_phases: energy sample size mismatch");
    PhaseAccumulator out = acc;
    out.t = acc.t + dt;
    for (size_t n = 0; n < d; ++n) {
        const double g0 = (1.0 - rates[0]) * energies[0][n];
        const double gm = (1.0 - rates[1]) * energies[1][n];
        const double g1 = (1.0 - rates[2]) * energies[2][n];
        out.f[n] += dt / (6.0 * hbar) * (g0 + 4.0 * gm + g1);
    }
    return out;
}

namespace {

// Hermitized element matrix V^dagger M V of an operator in the frame basis.
ComplexMatrix frame_elements(const SpectralFrame& frame, const ComplexMatrix& m) {
    ComplexMatrix w = frame.states.adjoint() * m * frame.states;
    const int d = w.dim();
    for (int n = 0; n < d; ++n) {
        w(n, n) = w(n, n).real();
        for (int j = n + 1; j < d; ++j) {
            const Complex v = 0.5 * (w(n, j) + std::conj(w(j, n)));
            w(n, j) = v;
            w(j, n) = std::conj(v);
        }
    }
    return w;
}

Complex wrapped_phase_factor(double df) {
    // e^{-i df}, with the difference wrapped so huge stored phases
    // do not cost accuracy
    return std::polar(1.0, -std::remainder(df, 2.0 * M_PI));
}

double phase_span(std::span<const double> f) {
    double lo = f[0], hi = f[0];
    for (double v : f) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi - lo;
}

}  // namespace

HermitianMatrix nad_term(const SpectralFrame& frame, const HermitianMatrix& h_cd,
                         std::span<const double> f) {
    const int d = frame.states.dim();
    if (static_cast<int>(f.size()) != d)
        throw DimensionMismatch("nad_term: phase vector length mismatch");
    const ComplexMatrix c = frame_elements(frame, h_cd.matrix());
    ComplexMatrix elem(d);
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m) {
            if (n == m) continue;
            elem(n, m) = -wrapped_phase_factor(f[n] - f[m]) * c(n, m);
        }
    return HermitianMatrix(frame.states * elem * frame.states.adjoint());
}

FFAssembly assemble_direct(const spectral::ReferenceHamiltonian& h,
                           const schedule::RescalingSchedule& sched, const PhaseAccumulator& acc,
                           double t, const SpectralFrame* prev_frame, const AssembleOptions& opts) {
    const auto [s, rate] = sched.eval(t);
    FFAssembly a;
    a.t = t;
    a.s = s;
    a.rate = rate;
    a.frame = spectral::frame_at(h, s, prev_frame, opts.frame);
    a.h_ref_s = hamiltonian_at(h, s);
    a.h_cd = spectral::cd_term(a.frame, dh_ds(h, s), opts.hbar);
    a.h_nad = nad_term(a.frame, a.h_cd, acc.f);
    a.h_ff = HermitianMatrix(a.h_ref_s.matrix() + rate * (a.h_cd.matrix() + a.h_nad.matrix()));
    a.f = acc.f;
    return a;
}

ComplexMatrix gauge_generator(const SpectralFrame& frame, std::span<const double> f) {
    const int d = frame.states.dim();
    if (static_cast<int>(f.size()) != d)
        throw DimensionMismatch("gauge_generator: phase vector length mismatch");
    ComplexMatrix elem(d);
    for (int n = 0; n < d; ++n) elem(n, n) = Complex(0.0, f[n]);
    return frame.states * elem * frame.states.adjoint();
}

ComplexMatrix d_gauge_generator_dt(const SpectralFrame& frame, std::span<const double> f,
                                   std::span<const double> df_dt, double rate,
                                   const HermitianMatrix& dh) {
    const int d = frame.states.dim();
    if (static_cast<int>(f.size()) != d || static_cast<int>(df_dt.size()) != d)
        throw DimensionMismatch("d_gauge_generator_dt: vector length mismatch");
    const ComplexMatrix w = frame_elements(frame, dh.matrix());
    // <n|dO|m> = i df_n/dt on the diagonal,
    //            i (f_m - f_n) rate <n|dH|m> / (E_m - E_n) off it
    ComplexMatrix elem(d);
    for (int n = 0; n < d; ++n) {
        elem(n, n) = Complex(0.0, df_dt[n]);
        for (int m = 0; m < d; ++m) {
            if (n == m) continue;
            elem(n, m) = Complex(0.0, f[m] - f[n]) * rate * w(n, m) /
                         (frame.energies[m] - frame.energies[n]);
        }
    }
    return frame.states * elem * frame.states.adjoint();
}

FFAssembly assemble_series(const spectral::ReferenceHamiltonian& h,
                           const schedule::RescalingSchedule& sched, const PhaseAccumulator& acc,
                           double t, const SpectralFrame* prev_frame, const SeriesOptions& opts) {
    if (!(opts.tol > 0.0)) throw DomainError("assemble_series: tol must be positive");
    if (opts.k_max < 1) throw DomainError("assemble_series: k_max must be >= 1");

    const double span = phase_span(acc.f);
    if (span > opts.max_phase_span) {
        std::ostringstream os;
        os << "assemble_series: phase span " << span << " exceeds " << opts.max_phase_span
           << "; use the direct route";
        throw SeriesNotConverged(os.str(), span, std::numeric_limits<double>::quiet_NaN());
    }

    const auto [s, rate] = sched.eval(t);
    FFAssembly a;
    a.t = t;
    a.s = s;
    a.rate = rate;
    a.frame = spectral::frame_at(h, s, prev_frame, opts.frame);
    a.h_ref_s = hamiltonian_at(h, s);
    a.f = acc.f;

    const int d = h.dim;
    const HermitianMatrix dh = dh_ds(h, s);

    // Reduce each phase by a whole number of 2 pi turns. e^O only sees
    // e^{i f_n} per level, so this is exact, and it keeps the alternating
    // series short.
    std::vector<double> fr(acc.f.begin(), acc.f.end());
    for (double& v : fr) v -= 2.0 * M_PI * std::nearbyint(v / (2.0 * M_PI));
    std::vector<double> df_dt(d);
    for (int n = 0; n < d; ++n) df_dt[n] = (1.0 - rate) * a.frame.energies[n] / opts.hbar;

    const ComplexMatrix gen = gauge_generator(a.frame, fr);
    const ComplexMatrix dgen = d_gauge_generator_dt(a.frame, fr, df_dt, rate, dh);

    ComplexMatrix term = dgen;  // k = 0 with coefficient 1
    ComplexMatrix sum = dgen;
    const Complex mih(0.0, -opts.hbar);
    ComplexMatrix h_ff_raw = rate * a.h_ref_s.matrix() + mih * sum;

    double coef = 1.0;
    bool converged = false;
    double last_contrib = 0.0;
    for (int k = 1; k <= opts.k_max; ++k) {
        term = commutator(gen, term);
        coef = -coef / static_cast<double>(k + 1);
        last_contrib = opts.hbar * std::abs(coef) * linalg::op_norm(term);
        sum += coef * term;
        h_ff_raw = rate * a.h_ref_s.matrix() + mih * sum;
        if (last_contrib < opts.tol * linalg::op_norm(h_ff_raw)) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        std::ostringstream os;
        os << "assemble_series: k_max = " << opts.k_max << " reached with last term "
           << last_contrib << " (phase span " << span << ")";
        throw SeriesNotConverged(os.str(), span, last_contrib);
    }

    // The counterdiabatic part is known independently; the phase-dressed
    // term is what the series adds beyond it.
    a.h_cd = spectral::cd_term(a.frame, dh, opts.hbar);
    if (std::abs(rate) > 1e-12) {
        ComplexMatrix elem = a.frame.states.adjoint() * h_ff_raw * a.frame.states;
        for (int n = 0; n < d; ++n) elem(n, n) = 0.0;  // diagonal belongs to h_ref_s
        const ComplexMatrix off = a.frame.states * elem * a.frame.states.adjoint();
        a.h_nad = HermitianMatrix((1.0 / rate) * off - a.h_cd.matrix(), 1e-9);
    } else {
        // rate (h_cd + h_nad) contributes nothing here; keep the element form
        a.h_nad = nad_term(a.frame, a.h_cd, acc.f);
    }
    a.h_ff = HermitianMatrix(a.h_ref_s.matrix() + rate * (a.h_cd.matrix() + a.h_nad.matrix()), 1e-9);
    return a;
}

Decomposition decompose_over_basis(const ComplexMatrix& m,
                                   const std::vector<HermitianMatrix>& basis) {
    if (basis.empty()) throw DomainError("decompose_over_basis: empty basis");
    const size_t k = basis.size();
    // normal equations with the real Frobenius inner product
    std::vector<double> g(k * k), b(k);
    auto inner = [](const ComplexMatrix& x, const ComplexMatrix& y) {
        Complex s = 0.0;
        for (int i = 0; i < x.dim(); ++i)
            for (int j = 0; j < x.dim(); ++j) s += std::conj(x(i, j)) * y(i, j);
        return s.real();
    };
    for (size_t i = 0; i < k; ++i) {
        b[i] = inner(basis[i].matrix(), m);
        for (size_t j = 0; j < k; ++j) g[i * k + j] = inner(basis[i].matrix(), basis[j].matrix());
    }
    // Gaussian elimination with partial pivoting
    std::vector<int> piv(k);
    for (size_t i = 0; i < k; ++i) piv[i] = static_cast<int>(i);
    for (size_t col = 0; col < k; ++col) {
        size_t best = col;
        for (size_t r = col + 1; r < k; ++r)
            if (std::abs(g[r * k + col]) > std::abs(g[best * k + col])) best = r;
        if (std::abs(g[best * k + col]) < 1e-14)
            throw NumericError("decompose_over_basis: basis is (nearly) linearly dependent");
        if (best != col) {
            for (size_t c = 0; c < k; ++c) std::swap(g[col * k + c], g[best * k + c]);
            std::swap(b[col], b[best]);
        }
        for (size_t r = col + 1; r < k; ++r) {
            const double fac = g[r * k + col] / g[col * k + col];
            for (size_t c = col; c < k; ++c) g[r * k + c] -= fac * g[col * k + c];
            b[r] -= fac * b[col];
        }
    }
    Decomposition out;
    out.coeffs.assign(k, 0.0);
    for (size_t i = k; i-- > 0;) {
        double v = b[i];
        for (size_t j = i + 1; j < k; ++j) v -= g[i * k + j] * out.coeffs[j];
        out.coeffs[i] = v / g[i * k + i];
    }
    ComplexMatrix fit(m.dim());
    for (size_t i = 0; i < k; ++i) fit += out.coeffs[i] * basis[i].matrix();
    out.residual = linalg::op_norm(m - fit);
    return out;
}

}  // namespace ffscale::assembler
