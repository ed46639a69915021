#include "ffscale/spectral.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ffscale::spectral {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::HermitianMatrix;

CoefficientSchedule CoefficientSchedule::constant(double c) {
    return CoefficientSchedule(ScheduleKind::constant, {c});
}

CoefficientSchedule CoefficientSchedule::linear(double a, double b) {
    return CoefficientSchedule(ScheduleKind::linear, {a, b});
}

CoefficientSchedule CoefficientSchedule::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw ConfigError("polynomial schedule needs at least one coefficient");
    return CoefficientSchedule(ScheduleKind::polynomial, std::move(coeffs));
}

CoefficientSchedule CoefficientSchedule::tanh_ramp(double base, double amplitude, double center,
                                                   double width) {
    if (width == 0.0) throw ConfigError("tanh_ramp schedule needs nonzero width");
    return CoefficientSchedule(ScheduleKind::tanh_ramp, {base, amplitude, center, width});
}

double CoefficientSchedule::value(double t) const {
    switch (kind_) {
        case ScheduleKind::constant:
            return params_[0];
        case ScheduleKind::linear:
            return params_[0] + params_[1] * t;
        case ScheduleKind::polynomial: {
            double v = 0.0;  // Horner
            for (size_t k = params_.size(); k-- > 0;) v = v * t + params_[k];
            return v;
        }
        case ScheduleKind::tanh_ramp:
            return params_[0] + params_[1] * std::tanh((t - params_[2]) / params_[3]);
    }
    return 0.0;
}

double CoefficientSchedule::derivative(double t) const {
    switch (kind_) {
        case ScheduleKind::constant:
            return 0.0;
        case ScheduleKind::linear:
            return params_[1];
        case ScheduleKind::polynomial: {
            double v = 0.0;
            for (size_t k = params_.size(); k-- > 1;) v = v * t + params_[k] * static_cast<double>(k);
            return v;
        }
        case ScheduleKind::tanh_ramp: {
            const double u = std::cosh((t - params_[2]) / params_[3]);
            return params_[1] / (params_[3] * u * u);
        }
    }
    return 0.0;
}

CoefficientSchedule CoefficientSchedule::rescale_time(double alpha) const {
    switch (kind_) {
        case ScheduleKind::constant:
            return *this;
        case ScheduleKind::linear:
            return linear(params_[0], params_[1] * alpha);
        case ScheduleKind::polynomial: {
            std::vector<double> c = params_;
            double p = 1.0;
            for (size_t k = 1; k < c.size(); ++k) {
                p *= alpha;
                c[k] *= p;
            }
            return polynomial(std::move(c));
        }
        case ScheduleKind::tanh_ramp:
            return tanh_ramp(params_[0], params_[1], params_[2] / alpha, params_[3] / alpha);
    }
    return *this;
}

ReferenceHamiltonian make_reference(std::vector<HermitianMatrix> basis,
                                    std::vector<CoefficientSchedule> schedules, double t_ref) {
    if (basis.empty()) throw ConfigError("reference Hamiltonian: empty operator basis");
    if (basis.size() != schedules.size())
        throw ConfigError("reference Hamiltonian: basis and schedule counts differ");
    if (!(t_ref > 0.0)) throw ConfigError("reference Hamiltonian: t_ref must be positive");
    const int d = basis.front().dim();
    for (const auto& b : basis)
        if (b.dim() != d) throw ConfigError("reference Hamiltonian: basis dims differ");
    ReferenceHamiltonian h;
    h.dim = d;
    h.basis = std::move(basis);
    h.schedules = std::move(schedules);
    h.t_ref = t_ref;
    return h;
}

namespace {

void check_domain(const ReferenceHamiltonian& h, double s) {
    const double slack = 1e-9 * std::max(1.0, h.t_ref);
    if (s < -slack || s > h.t_ref + slack) {
        std::ostringstream os;
        os << "reference Hamiltonian: s = " << s << " outside domain [0, " << h.t_ref << "]";
        throw DomainError(os.str());
    }
}

HermitianMatrix weighted_sum(const ReferenceHamiltonian& h, double s, bool derivative) {
    check_domain(h, s);
    ComplexMatrix m(h.dim);
    for (size_t k = 0; k < h.basis.size(); ++k) {
        const double c = derivative ? h.schedules[k].derivative(s) : h.schedules[k].value(s);
        if (c == 0.0) continue;
        m += c * h.basis[k].matrix();
    }
    return HermitianMatrix(m);
}

}  // namespace

HermitianMatrix hamiltonian_at(const ReferenceHamiltonian& h, double s) {
    return weighted_sum(h, s, false);
}

HermitianMatrix dh_ds(const ReferenceHamiltonian& h, double s) {
    return weighted_sum(h, s, true);
}

linalg::Vector SpectralFrame::state(int n) const {
    linalg::Vector v(states.dim());
    for (int i = 0; i < states.dim(); ++i) v[i] = states(i, n);
    return v;
}

SpectralFrame frame_at(const ReferenceHamiltonian& h, double s, const SpectralFrame* prev,
                       const FrameOptions& opts) {
    const HermitianMatrix hm = hamiltonian_at(h, s);
    const linalg::EigenDecomposition eig = linalg::hermitian_eig(hm, opts.jacobi);
    const int d = h.dim;

    double min_gap = std::numeric_limits<double>::infinity();
    for (int n = 0; n + 1 < d; ++n) min_gap = std::min(min_gap, eig.values[n + 1] - eig.values[n]);
    if (d == 1) min_gap = std::numeric_limits<double>::infinity();
    if (min_gap <= opts.degeneracy_rel_threshold * linalg::op_norm(hm)) {
        std::ostringstream os;
        os << "degenerate spectrum at s = " << s << " (min gap " << min_gap << ")";
        throw DegenerateSpectrum(os.str(), s, min_gap);
    }

    SpectralFrame frame;
    frame.s = s;
    frame.min_gap = min_gap;
    frame.energies.resize(d);
    frame.states = ComplexMatrix(d);

    if (prev == nullptr) {
        for (int n = 0; n < d; ++n) {
            frame.energies[n] = eig.values[n];
            // largest-magnitude component real positive
            int imax = 0;
            double amax = 0.0;
            for (int i = 0; i < d; ++i) {
                const double a = std::abs(eig.vectors(i, n));
                if (a > amax) {
                    amax = a;
                    imax = i;
                }
            }
            const Complex ph = eig.vectors(imax, n) / amax;
            for (int i = 0; i < d; ++i) frame.states(i, n) = eig.vectors(i, n) * std::conj(ph);
        }
        return frame;
    }

    // level tracking: assign each previous level the new column it overlaps
    // most; a confident match exceeds 1/sqrt(2), which also forces the
    // assignment to be a permutation
    for (int n = 0; n < d; ++n) {
        int best = -1;
        double best_ov = -1.0;
        Complex best_z = 0.0;
        for (int j = 0; j < d; ++j) {
            Complex z = 0.0;
            for (int i = 0; i < d; ++i) z += std::conj(prev->states(i, n)) * eig.vectors(i, j);
            const double ov = std::abs(z);
            if (ov > best_ov) {
                best_ov = ov;
                best = j;
                best_z = z;
            }
        }
        if (best_ov < opts.tracking_min_overlap) {
            std::ostringstream os;
            os << "ambiguous level tracking at s = " << s << " (best overlap " << best_ov
               << " for level " << n << "); reduce the step size";
            throw AmbiguousTracking(os.str(), s, best_ov);
        }
        frame.energies[n] = eig.values[best];
        // parallel transport: <n_prev|n> real positive
        const Complex ph = best_z / best_ov;
        for (int i = 0; i < d; ++i) frame.states(i, n) = eig.vectors(i, best) * std::conj(ph);
    }
    return frame;
}

HermitianMatrix cd_term(const SpectralFrame& frame, const HermitianMatrix& dh, double hbar) {
    const int d = frame.states.dim();
    if (dh.dim() != d) throw DimensionMismatch("cd_term: dimension mismatch");
    const ComplexMatrix vd = frame.states.adjoint();
    ComplexMatrix w = vd * dh.matrix() * frame.states;
    // hermitize the element matrix so the reconstruction below is exactly
    // conjugate-symmetric
    for (int n = 0; n < d; ++n)
        for (int m = n + 1; m < d; ++m) {
            const Complex v = 0.5 * (w(n, m) + std::conj(w(m, n)));
            w(n, m) = v;
            w(m, n) = std::conj(v);
        }
    ComplexMatrix elem(d);
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m) {
            if (n == m) continue;
            elem(n, m) = Complex(0.0, hbar) * w(n, m) / (frame.energies[m] - frame.energies[n]);
        }
    return HermitianMatrix(frame.states * elem * vd);
}

void apply_random_gauge(SpectralFrame& frame, std::uint64_t& rng_state) {
    const int d = frame.states.dim();
    for (int n = 0; n < d; ++n) {
        // splitmix64 step -> uniform angle
        rng_state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = rng_state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        const double angle = 2.0 * M_PI * (static_cast<double>(z >> 11) * 0x1.0p-53);
        const Complex ph = std::polar(1.0, angle);
        for (int i = 0; i < d; ++i) frame.states(i, n) *= ph;
    }
}

}  // namespace ffscale::spectral
