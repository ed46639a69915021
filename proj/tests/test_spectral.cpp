#include "doctest.h"

#include <cmath>

#include "ffscale/spectral.hpp"
#include "ffscale/twolevel.hpp"
#include "test_util.hpp"

using namespace ffscale;
using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::HermitianMatrix;
using spectral::CoefficientSchedule;
using test::max_abs_diff;

namespace {

spectral::ReferenceHamiltonian two_level(CoefficientSchedule hx, CoefficientSchedule hz,
                                         double t_ref = 20.0) {
    std::vector<HermitianMatrix> basis = {HermitianMatrix(-1.0 * twolevel::pauli_x()),
                                          HermitianMatrix(-1.0 * twolevel::pauli_z())};
    return spectral::make_reference(std::move(basis), {std::move(hx), std::move(hz)}, t_ref);
}

}  // namespace

TEST_SUITE_BEGIN("spectral");

TEST_CASE("coefficient schedules: derivative matches central differences") {
    const std::vector<CoefficientSchedule> scheds = {
        CoefficientSchedule::constant(2.5),
        CoefficientSchedule::linear(-1.0, 0.7),
        CoefficientSchedule::polynomial({0.3, -1.2, 0.05, 0.01}),
        CoefficientSchedule::tanh_ramp(0.5, 2.0, 3.0, 0.8),
    };
    const double h = 1e-5;
    for (const auto& s : scheds)
        for (double t = 0.0; t <= 8.0; t += 0.9) {
            const double fd = (s.value(t + h) - s.value(t - h)) / (2.0 * h);
            CHECK(std::abs(s.derivative(t) - fd) < 1e-6 * std::max(1.0, std::abs(fd)));
        }
}

TEST_CASE("coefficient schedules: rescale_time composes the argument") {
    const std::vector<CoefficientSchedule> scheds = {
        CoefficientSchedule::constant(2.5),
        CoefficientSchedule::linear(-1.0, 0.7),
        CoefficientSchedule::polynomial({0.3, -1.2, 0.05, 0.01}),
        CoefficientSchedule::tanh_ramp(0.5, 2.0, 3.0, 0.8),
    };
    const double alpha = 0.125;
    for (const auto& s : scheds) {
        const auto scaled = s.rescale_time(alpha);
        for (double t = 0.0; t <= 40.0; t += 3.7) {
            CHECK(scaled.value(t) == doctest::Approx(s.value(alpha * t)).epsilon(1e-12));
            CHECK(scaled.derivative(t) ==
                  doctest::Approx(alpha * s.derivative(alpha * t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("hamiltonian_at: two-level composition") {
    const auto h = two_level(CoefficientSchedule::constant(1.0), CoefficientSchedule::constant(0.0));
    const auto m = hamiltonian_at(h, 3.0);
    CHECK(max_abs_diff(m.matrix(), Complex(-1.0) * twolevel::pauli_x()) == 0.0);

    const auto zero = two_level(CoefficientSchedule::constant(0.0), CoefficientSchedule::constant(0.0));
    CHECK(linalg::op_norm(hamiltonian_at(zero, 1.0)) == 0.0);

    // h^x(s) = s over basis {-X}
    std::vector<HermitianMatrix> basis = {HermitianMatrix(-1.0 * twolevel::pauli_x())};
    const auto ramp = spectral::make_reference(std::move(basis),
                                               {CoefficientSchedule::linear(0.0, 1.0)}, 20.0);
    const auto m2 = hamiltonian_at(ramp, 2.0);
    CHECK(m2(0, 1) == Complex(-2.0));
    CHECK(m2(1, 0) == Complex(-2.0));
    CHECK(m2(0, 0) == Complex(0.0));

    CHECK_THROWS_AS(hamiltonian_at(h, 25.0), DomainError);
    CHECK_THROWS_AS(hamiltonian_at(h, -1.0), DomainError);
}

TEST_CASE("dh_ds: analytic and finite-difference routes agree") {
    const auto h_const = two_level(CoefficientSchedule::constant(1.0), CoefficientSchedule::constant(2.0));
    CHECK(linalg::op_norm(dh_ds(h_const, 5.0)) == 0.0);

    std::vector<HermitianMatrix> basis = {HermitianMatrix(-1.0 * twolevel::pauli_z())};
    const auto hz = spectral::make_reference(std::move(basis),
                                             {CoefficientSchedule::linear(0.0, 1.0)}, 20.0);
    CHECK(max_abs_diff(dh_ds(hz, 7.0).matrix(), Complex(-1.0) * twolevel::pauli_z()) == 0.0);

    // polynomial schedules vs central differences
    const auto h = two_level(CoefficientSchedule::polynomial({1.0, 0.2, -0.03}),
                             CoefficientSchedule::polynomial({-10.0, 1.0, 0.01}));
    const double step = 1e-5;
    for (double s = 1.0; s < 19.0; s += 2.3) {
        const ComplexMatrix fd =
            (1.0 / (2.0 * step)) *
            (hamiltonian_at(h, s + step).matrix() - hamiltonian_at(h, s - step).matrix());
        CHECK(linalg::op_norm(dh_ds(h, s).matrix() - fd) < 1e-6 * linalg::op_norm(hamiltonian_at(h, s)));
    }
}

TEST_CASE("frame_at: axis cases from the two-level eigensystem") {
    const auto hz1 = two_level(CoefficientSchedule::constant(0.0), CoefficientSchedule::constant(1.0));
    const auto f = frame_at(hz1, 0.0);
    CHECK(f.energies[0] == doctest::Approx(-1.0));
    CHECK(f.energies[1] == doctest::Approx(1.0));
    CHECK(std::abs(f.states(0, 0) - Complex(1.0)) < 1e-12);  // |-> = (1,0)
    CHECK(std::abs(f.states(1, 1) - Complex(1.0)) < 1e-12);  // |+> = (0,1)
    CHECK(f.min_gap == doctest::Approx(2.0));

    const auto hx1 = two_level(CoefficientSchedule::constant(1.0), CoefficientSchedule::constant(0.0));
    const auto g = frame_at(hx1, 0.0);
    CHECK(g.energies[0] == doctest::Approx(-1.0));
    const double isq = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(g.states(0, 0) - Complex(isq)) < 1e-12);
    CHECK(std::abs(g.states(1, 0) - Complex(isq)) < 1e-12);
}

TEST_CASE("frame_at: successive frames have real positive overlaps") {
    const auto h = two_level(CoefficientSchedule::constant(1.0),
                             CoefficientSchedule::linear(-10.0, 1.0));
    auto prev = frame_at(h, 4.0);
    for (int k = 1; k <= 20; ++k) {
        const double s = 4.0 + 1e-4 * k;
        const auto f = frame_at(h, s, &prev);
        for (int n = 0; n < 2; ++n) {
            Complex ov = 0.0;
            for (int i = 0; i < 2; ++i) ov += std::conj(prev.states(i, n)) * f.states(i, n);
            CHECK(ov.real() > 0.0);
            CHECK(std::abs(ov.imag()) < 1e-12);
        }
        prev = f;
    }
}

TEST_CASE("frame_at: tracked energies move no faster than ||dH||") {
    const auto h = two_level(CoefficientSchedule::tanh_ramp(0.0, 2.0, 10.0, 2.0),
                             CoefficientSchedule::linear(-10.0, 1.0));
    const double ds = 1e-3;
    auto prev = frame_at(h, 2.0);
    for (double s = 2.0 + ds; s < 18.0; s += ds) {
        const auto f = frame_at(h, s, &prev);
        const double lipschitz = linalg::op_norm(dh_ds(h, s - 0.5 * ds));
        for (int n = 0; n < 2; ++n)
            CHECK(std::abs(f.energies[n] - prev.energies[n]) <= lipschitz * ds * 1.01 + 1e-12);
        prev = f;
    }
}

TEST_CASE("frame_at: degenerate spectrum is rejected") {
    const auto zero = two_level(CoefficientSchedule::constant(0.0), CoefficientSchedule::constant(0.0));
    try {
        frame_at(zero, 1.0);
        FAIL("expected DegenerateSpectrum");
    } catch (const DegenerateSpectrum& e) {
        CHECK(e.s == doctest::Approx(1.0));
        CHECK(e.min_gap == 0.0);
    }
}

TEST_CASE("frame_at: too large a step trips the tracking guard") {
    const auto h = two_level(CoefficientSchedule::tanh_ramp(0.45, 0.55, 10.0, 0.05),
                             CoefficientSchedule::constant(1.0));
    // hx ramps 0 -> 1 across s ~ 10, rotating theta by ~pi/4 + epsilon
    const auto before = frame_at(h, 5.0);
    CHECK_THROWS_AS(frame_at(h, 15.0, &before), AmbiguousTracking);
}

TEST_CASE("cd_term: zero drive has no counterdiabatic term") {
    const auto h = two_level(CoefficientSchedule::constant(1.0), CoefficientSchedule::constant(0.5));
    const auto f = frame_at(h, 3.0);
    const auto cd = cd_term(f, dh_ds(h, 3.0));
    CHECK(linalg::op_norm(cd) < 1e-15);
}

TEST_CASE("cd_term: hx = 1, hz(s) = s at s = 0 gives -(1/2) Y") {
    const auto h = two_level(CoefficientSchedule::constant(1.0), CoefficientSchedule::linear(0.0, 1.0));
    const auto f = frame_at(h, 0.0);
    const auto cd = cd_term(f, dh_ds(h, 0.0));
    CHECK(max_abs_diff(cd.matrix(), -0.5 * twolevel::pauli_y()) < 1e-12);
}

TEST_CASE("cd_term: diagonal in the frame basis is exactly zero, traceless") {
    const auto h = two_level(CoefficientSchedule::polynomial({1.0, 0.1, 0.02}),
                             CoefficientSchedule::linear(-10.0, 1.0));
    const auto f = frame_at(h, 6.0);
    const auto cd = cd_term(f, dh_ds(h, 6.0));
    const ComplexMatrix elem = f.states.adjoint() * cd.matrix() * f.states;
    CHECK(std::abs(elem(0, 0)) < 1e-14);
    CHECK(std::abs(elem(1, 1)) < 1e-14);
    CHECK(std::abs(cd.matrix().trace()) < 1e-14);
}

TEST_CASE("cd_term: two-level family equals dtheta/ds Y along the sweep") {
    const auto hx = CoefficientSchedule::tanh_ramp(1.0, 0.3, 10.0, 3.0);
    const auto hz = CoefficientSchedule::linear(-10.0, 1.0);
    const auto h = two_level(hx, hz);
    for (double s = 0.5; s < 20.0; s += 0.7) {
        const auto f = frame_at(h, s);
        const auto cd = cd_term(f, dh_ds(h, s));
        const double th_p = twolevel::dtheta_ds(hx.value(s), hz.value(s), hx.derivative(s),
                                                hz.derivative(s));
        CHECK(max_abs_diff(cd.matrix(), twolevel::analytic_cd(th_p).matrix()) < 1e-9);
    }
}

TEST_CASE("cd_term: operator is invariant under random re-gauging") {
    const auto h = two_level(CoefficientSchedule::constant(1.0), CoefficientSchedule::linear(-10.0, 1.0));
    auto f = frame_at(h, 3.0);
    const auto cd = cd_term(f, dh_ds(h, 3.0));
    std::uint64_t rng = 2024;
    spectral::apply_random_gauge(f, rng);
    const auto cd2 = cd_term(f, dh_ds(h, 3.0));
    CHECK(max_abs_diff(cd.matrix(), cd2.matrix()) < 1e-12);
}

TEST_SUITE_END();
