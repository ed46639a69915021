#include "ffscale/twolevel.hpp"

#include <cmath>

namespace ffscale::twolevel {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::HermitianMatrix;

ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix pauli_y() { return ComplexMatrix(2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0}); }
ComplexMatrix pauli_z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

double theta(double hx, double hz) {
    if (hx == 0.0 && hz == 0.0) throw DomainError("theta: zero field");
    return 0.5 * std::atan2(hx, hz);
}

double theta_continuous(double hx, double hz, double theta_prev) {
    const double raw = theta(hx, hz);
    // the eigenframe repeats with period pi in theta
    return raw + M_PI * std::round((theta_prev - raw) / M_PI);
}

double dtheta_ds(double hx, double hz, double dhx_ds, double dhz_ds) {
    if (hx == 0.0 && hz == 0.0) throw DomainError("dtheta_ds: zero field");
    return (hz * dhx_ds - hx * dhz_ds) / (2.0 * (hx * hx + hz * hz));
}

EigenSystem analytic_eigensystem(double hx, double hz) {
    const double e = std::hypot(hx, hz);
    if (e == 0.0) throw DomainError("analytic_eigensystem: zero field");
    const double th = theta(hx, hz);
    EigenSystem sys;
    sys.e_plus = e;
    sys.e_minus = -e;
    sys.minus = {std::cos(th), std::sin(th)};
    sys.plus = {-std::sin(th), std::cos(th)};
    return sys;
}

HermitianMatrix analytic_cd(double dtheta) {
    return HermitianMatrix(dtheta * pauli_y());
}

HermitianMatrix analytic_nad(double dtheta, double f_plus, double theta) {
    const double c2 = std::cos(2.0 * theta);
    const double s2 = std::sin(2.0 * theta);
    ComplexMatrix m = (-dtheta * std::sin(2.0 * f_plus) * c2) * pauli_x();
    m += (dtheta * std::sin(2.0 * f_plus) * s2) * pauli_z();
    m += (-dtheta * std::cos(2.0 * f_plus)) * pauli_y();
    return HermitianMatrix(m);
}

ComplexMatrix adjoint_series_term(int k, double rate, double dtheta, double f_plus, double theta) {
    if (k < 1) throw DomainError("adjoint_series_term: k must be >= 1");
    const Complex mi(0.0, -1.0);
    Complex pref = rate * dtheta;
    Complex phase = 1.0;
    for (int j = 0; j < k + 1; ++j) phase *= mi;
    pref *= phase * std::pow(2.0 * f_plus, k + 1);
    ComplexMatrix w(2);
    if (k % 2 == 1) {
        w = Complex(0.0, 1.0) * pauli_y();
    } else {
        w = std::cos(2.0 * theta) * pauli_x() - std::sin(2.0 * theta) * pauli_z();
    }
    return pref * w;
}

}  // namespace ffscale::twolevel
