#include "doctest.h"

#include <cmath>

#include "ffscale/linalg.hpp"
#include "ffscale/twolevel.hpp"
#include "test_util.hpp"

using namespace ffscale;
using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::HermitianMatrix;
using test::max_abs_diff;

TEST_SUITE_BEGIN("linalg");

TEST_CASE("hermitian_eig: diagonal input is returned sorted") {
    const HermitianMatrix a(ComplexMatrix(2, {-1.0, 0.0, 0.0, 1.0}));
    const auto eig = linalg::hermitian_eig(a);
    CHECK(eig.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(eig.values[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(eig.vectors(0, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(eig.vectors(1, 1)) == doctest::Approx(1.0));
    CHECK(std::abs(eig.vectors(1, 0)) == doctest::Approx(0.0));
}

TEST_CASE("hermitian_eig: -X has ground state (1,1)/sqrt(2) at energy -1") {
    const HermitianMatrix a(ComplexMatrix(2, {0.0, -1.0, -1.0, 0.0}));
    const auto eig = linalg::hermitian_eig(a);
    CHECK(eig.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(eig.values[1] == doctest::Approx(1.0).epsilon(1e-14));
    // proportional to (1,1)/sqrt(2): components equal in magnitude and phase
    const Complex r = eig.vectors(0, 0) / eig.vectors(1, 0);
    CHECK(std::abs(r - Complex(1.0)) < 1e-12);
    CHECK(std::abs(std::abs(eig.vectors(0, 0)) - 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("hermitian_eig: random 6x6 reconstruction oracle") {
    std::uint64_t rng = 42;
    for (int rep = 0; rep < 5; ++rep) {
        const HermitianMatrix a = test::random_hermitian(6, rng);
        const auto eig = linalg::hermitian_eig(a);
        const int d = 6;
        for (int n = 0; n + 1 < d; ++n) CHECK(eig.values[n] <= eig.values[n + 1]);
        // V diag(values) V^dagger == A
        ComplexMatrix rec(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Complex s = 0.0;
                for (int n = 0; n < d; ++n)
                    s += eig.vectors(i, n) * eig.values[n] * std::conj(eig.vectors(j, n));
                rec(i, j) = s;
            }
        CHECK(linalg::op_norm(rec - a.matrix()) < 1e-10 * linalg::op_norm(a));
        // orthonormality
        const ComplexMatrix gram = eig.vectors.adjoint() * eig.vectors;
        CHECK(linalg::op_norm(gram - ComplexMatrix::identity(d)) < 1e-10);
        // eigen-equation residual
        for (int n = 0; n < d; ++n) {
            linalg::Vector v(d);
            for (int i = 0; i < d; ++i) v[i] = eig.vectors(i, n);
            const auto av = linalg::matvec(a.matrix(), v);
            double res = 0.0;
            for (int i = 0; i < d; ++i) res += std::norm(av[i] - eig.values[n] * v[i]);
            CHECK(std::sqrt(res) < 1e-10 * linalg::op_norm(a));
        }
    }
}

TEST_CASE("hermitian_eig: deterministic for fixed input") {
    std::uint64_t rng = 7;
    const HermitianMatrix a = test::random_hermitian(5, rng);
    const auto e1 = linalg::hermitian_eig(a);
    const auto e2 = linalg::hermitian_eig(a);
    for (int n = 0; n < 5; ++n) CHECK(e1.values[n] == e2.values[n]);
    CHECK(max_abs_diff(e1.vectors, e2.vectors) == 0.0);
}

TEST_CASE("hermitian_eig: sweep cap raises with residual attached") {
    std::uint64_t rng = 3;
    const HermitianMatrix a = test::random_hermitian(4, rng);
    linalg::JacobiOptions opts;
    opts.max_sweeps = 0;
    try {
        linalg::hermitian_eig(a, opts);
        FAIL("expected EigNotConverged");
    } catch (const EigNotConverged& e) {
        CHECK(e.off_residual > 0.0);
    }
}

TEST_CASE("exp_unitary: tau = 0 gives the identity") {
    std::uint64_t rng = 12;
    const HermitianMatrix h = test::random_hermitian(3, rng);
    const ComplexMatrix u = linalg::exp_unitary(h, 0.0);
    CHECK(linalg::op_norm(u - ComplexMatrix::identity(3)) < 1e-14);
}

TEST_CASE("exp_unitary: Z rotation by pi flips the sign") {
    const HermitianMatrix z(twolevel::pauli_z());
    const ComplexMatrix u = linalg::exp_unitary(z, M_PI);
    CHECK(linalg::op_norm(u + ComplexMatrix::identity(2)) < 1e-13);
}

TEST_CASE("exp_unitary: Taylor-series oracle on a random 4x4") {
    std::uint64_t rng = 99;
    const HermitianMatrix h = test::random_hermitian(4, rng);
    const double tau = 0.3;
    const ComplexMatrix u = linalg::exp_unitary(h, tau);

    ComplexMatrix taylor = ComplexMatrix::identity(4);
    ComplexMatrix term = ComplexMatrix::identity(4);
    const ComplexMatrix mith = Complex(0.0, -tau) * h.matrix();
    for (int k = 1; k <= 40; ++k) {
        term = (1.0 / k) * (term * mith);
        taylor += term;
    }
    CHECK(linalg::op_norm(u - taylor) < 1e-12);
    CHECK(linalg::op_norm(u.adjoint() * u - ComplexMatrix::identity(4)) < 1e-12);
}

TEST_CASE("commutator: algebra basics") {
    const ComplexMatrix x = twolevel::pauli_x();
    const ComplexMatrix y = twolevel::pauli_y();
    const ComplexMatrix z = twolevel::pauli_z();
    CHECK(linalg::op_norm(linalg::commutator(z, z)) == 0.0);
    CHECK(linalg::op_norm(linalg::commutator(x, y) - Complex(0.0, 2.0) * z) < 1e-15);
    CHECK_THROWS_AS(linalg::commutator(x, ComplexMatrix(3)), DimensionMismatch);
}

TEST_CASE("commutator: antisymmetry exact, i[A,B] Hermitian") {
    std::uint64_t rng = 1234;
    const HermitianMatrix a = test::random_hermitian(4, rng);
    const HermitianMatrix b = test::random_hermitian(4, rng);
    const ComplexMatrix ab = linalg::commutator(a, b);
    const ComplexMatrix ba = linalg::commutator(b.matrix(), a.matrix());
    CHECK(max_abs_diff(ab, Complex(-1.0) * ba) == 0.0);
    const ComplexMatrix iab = Complex(0.0, 1.0) * ab;
    CHECK(linalg::op_norm(iab - iab.adjoint()) < 1e-12);
}

TEST_CASE("op_norm examples") {
    CHECK(linalg::op_norm(ComplexMatrix(2)) == 0.0);
    CHECK(linalg::op_norm(ComplexMatrix::identity(2)) == doctest::Approx(std::sqrt(2.0)));
    CHECK(linalg::op_norm(twolevel::pauli_x()) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("HermitianMatrix construction guards") {
    ComplexMatrix bad(2, {0.0, 1.0, 2.0, 0.0});
    CHECK_THROWS_AS(HermitianMatrix{bad}, NumericError);

    ComplexMatrix nan_mat(2);
    nan_mat(0, 0) = std::nan("");
    CHECK_THROWS_AS(HermitianMatrix{nan_mat}, NumericError);

    CHECK_THROWS_AS(ComplexMatrix{0}, DimensionMismatch);
}

TEST_SUITE_END();
