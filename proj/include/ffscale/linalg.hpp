#ifndef FFSCALE_LINALG_HPP
#define FFSCALE_LINALG_HPP

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include "ffscale/errors.hpp"

namespace ffscale::linalg {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim);  // zero-initialized
    ComplexMatrix(int dim, std::initializer_list<Complex> entries);

    static ComplexMatrix identity(int dim);

    int dim() const { return dim_; }

    Complex& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const Complex& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex z);

    ComplexMatrix adjoint() const;
    Complex trace() const;
    double max_abs() const;
    bool is_finite() const;

private:
    int dim_ = 0;
    std::vector<Complex> a_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex z, ComplexMatrix m);
ComplexMatrix operator*(double x, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

// Frobenius norm.
double op_norm(const ComplexMatrix& a);

// AB - BA. Throws DimensionMismatch.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

inline constexpr double kHermitianTol = 1e-12;

// A complex matrix checked (and symmetrized) to be Hermitian on construction.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(const ComplexMatrix& a, double tol = kHermitianTol);

    static HermitianMatrix zero(int dim) { return HermitianMatrix(ComplexMatrix(dim)); }

    int dim() const { return m_.dim(); }
    const ComplexMatrix& matrix() const { return m_; }
    operator const ComplexMatrix&() const { return m_; }
    const Complex& operator()(int i, int j) const { return m_(i, j); }

private:
    ComplexMatrix m_;
};

struct EigenDecomposition {
    std::vector<double> values;   // ascending
    ComplexMatrix vectors;        // orthonormal columns, vectors.col(n) <-> values[n]
};

struct JacobiOptions {
    double rel_threshold = 1e-13;  // off-diagonal Frobenius residual, relative to ||A||
    int max_sweeps = 100;
};

// Cyclic Jacobi with complex rotations. Deterministic (fixed row-cyclic
// pivot order, stable ascending sort). Throws EigNotConverged past the
// sweep cap.
EigenDecomposition hermitian_eig(const HermitianMatrix& a, const JacobiOptions& opts = {});

// e^{-i tau H} through the eigendecomposition; unitary to roundoff.
ComplexMatrix exp_unitary(const HermitianMatrix& h, double tau, const JacobiOptions& opts = {});

// --- small vector helpers used by the propagators ---

using Vector = std::vector<Complex>;

Vector matvec(const ComplexMatrix& a, std::span<const Complex> x);
Complex vdot(std::span<const Complex> a, std::span<const Complex> b);  // conj(a).b
double vec_norm(std::span<const Complex> a);

}  // namespace ffscale::linalg

#endif
