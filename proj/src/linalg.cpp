#include "ffscale/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ffscale::linalg {

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {
    if (dim < 1) throw DimensionMismatch("ComplexMatrix: dim must be >= 1");
}

ComplexMatrix::ComplexMatrix(int dim, std::initializer_list<Complex> entries) : ComplexMatrix(dim) {
    if (static_cast<int>(entries.size()) != dim * dim)
        throw DimensionMismatch("ComplexMatrix: entry count does not match dim*dim");
    std::copy(entries.begin(), entries.end(), a_.begin());
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (dim_ != rhs.dim_) throw DimensionMismatch("matrix add: dimension mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (dim_ != rhs.dim_) throw DimensionMismatch("matrix sub: dimension mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex z) {
    for (auto& v : a_) v *= z;
    return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

bool ComplexMatrix::is_finite() const {
    for (const auto& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex z, ComplexMatrix m) { return m *= z; }
ComplexMatrix operator*(double x, ComplexMatrix m) { return m *= Complex(x, 0.0); }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    const int d = lhs.dim();
    if (d != rhs.dim()) throw DimensionMismatch("matrix multiply: dimension mismatch");
    ComplexMatrix r(d);
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            const Complex v = lhs(i, k);
            if (v == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < d; ++j) r(i, j) += v * rhs(k, j);
        }
    }
    return r;
}

double op_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("commutator: dimension mismatch");
    return a * b - b * a;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& a, double tol) {
    if (!a.is_finite()) throw NumericError("HermitianMatrix: non-finite entries");
    const int d = a.dim();
    double worst = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
    if (worst > tol) {
        std::ostringstream os;
        os << "HermitianMatrix: asymmetry " << worst << " exceeds tolerance " << tol;
        throw NumericError(os.str());
    }
    // Symmetrize so downstream algebra sees an exactly conjugate-symmetric
    // matrix with a real diagonal.
    ComplexMatrix m(d);
    for (int i = 0; i < d; ++i) {
        m(i, i) = a(i, i).real();
        for (int j = i + 1; j < d; ++j) {
            const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    }
    m_ = std::move(m);
}

namespace {

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

EigenDecomposition hermitian_eig(const HermitianMatrix& input, const JacobiOptions& opts) {
    const int d = input.dim();
    ComplexMatrix a = input.matrix();
    ComplexMatrix v = ComplexMatrix::identity(d);

    const double norm_a = op_norm(a);
    const double threshold = opts.rel_threshold * norm_a;

    int sweep = 0;
    double off = offdiag_norm(a);
    while (off > threshold) {
        if (sweep >= opts.max_sweeps) {
            std::ostringstream os;
            os << "hermitian_eig: no convergence after " << opts.max_sweeps
               << " sweeps, off-diagonal residual " << off;
            throw EigNotConverged(os.str(), off);
        }
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const Complex g = a(p, q);
                const double absg = std::abs(g);
                if (absg == 0.0) continue;
                const double alpha = a(p, p).real();
                const double beta = a(q, q).real();
                const double tau = (beta - alpha) / (2.0 * absg);
                // smaller-magnitude root of t^2 - 2 tau t - 1 = 0
                const double t = (tau > 0.0) ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                             : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const Complex sc = (t * c) * (g / absg);  // s e^{i phi}
                const Complex scc = std::conj(sc);

                // A <- V^dagger A with V = [[c, -sc],[conj(sc), c]] on (p,q)
                for (int j = 0; j < d; ++j) {
                    const Complex apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj + sc * aqj;
                    a(q, j) = -scc * apj + c * aqj;
                }
                // A <- A V
                for (int i = 0; i < d; ++i) {
                    const Complex aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip + scc * aiq;
                    a(i, q) = -sc * aip + c * aiq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = alpha + t * absg;
                a(q, q) = beta - t * absg;
                // accumulate eigenvectors
                for (int i = 0; i < d; ++i) {
                    const Complex vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip + scc * viq;
                    v(i, q) = -sc * vip + c * viq;
                }
            }
        }
        ++sweep;
        off = offdiag_norm(a);
    }

    // ascending sort, stable for exact ties
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition r;
    r.values.resize(d);
    r.vectors = ComplexMatrix(d);
    for (int n = 0; n < d; ++n) {
        r.values[n] = a(order[n], order[n]).real();
        for (int i = 0; i < d; ++i) r.vectors(i, n) = v(i, order[n]);
    }
    return r;
}

ComplexMatrix exp_unitary(const HermitianMatrix& h, double tau, const JacobiOptions& opts) {
    if (!std::isfinite(tau)) throw DomainError("exp_unitary: tau must be finite");
    const EigenDecomposition eig = hermitian_eig(h, opts);
    const int d = h.dim();
    std::vector<Complex> phase(d);
    for (int n = 0; n < d; ++n) phase[n] = std::polar(1.0, -tau * eig.values[n]);
    ComplexMatrix u(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Complex s = 0.0;
            for (int n = 0; n < d; ++n)
                s += eig.vectors(i, n) * phase[n] * std::conj(eig.vectors(j, n));
            u(i, j) = s;
        }
    return u;
}

Vector matvec(const ComplexMatrix& a, std::span<const Complex> x) {
    const int d = a.dim();
    if (static_cast<int>(x.size()) != d) throw DimensionMismatch("matvec: dimension mismatch");
    Vector y(d);
    for (int i = 0; i < d; ++i) {
        Complex s = 0.0;
        for (int j = 0; j < d; ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Complex vdot(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw DimensionMismatch("vdot: dimension mismatch");
    Complex s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double vec_norm(std::span<const Complex> a) {
    double s = 0.0;
    for (const auto& v : a) s += std::norm(v);
    return std::sqrt(s);
}

}  // namespace ffscale::linalg
