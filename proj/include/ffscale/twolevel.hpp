#ifndef FFSCALE_TWOLEVEL_HPP
#define FFSCALE_TWOLEVEL_HPP

#include "ffscale/linalg.hpp"

namespace ffscale::twolevel {

// Closed forms for H = -hx X - hz Z: eigensystem, mixing angle theta with
// sin 2theta = hx/E+, cos 2theta = hz/E+, the counterdiabatic term
// theta' Y, the phase-dressed off-diagonal term, and the nested-commutator
// closed form.

linalg::ComplexMatrix pauli_x();
linalg::ComplexMatrix pauli_y();
linalg::ComplexMatrix pauli_z();

// theta = atan2(hx, hz) / 2. Throws DomainError at hx = hz = 0.
double theta(double hx, double hz);

// Branch-tracked theta: shifted by multiples of pi/... so it stays within
// pi/2 of theta_prev, keeping theta(s) continuous across sign changes of hz.
double theta_continuous(double hx, double hz, double theta_prev);

// theta' = (hz hx' - hx hz') / (2 (hx^2 + hz^2))
double dtheta_ds(double hx, double hz, double dhx_ds, double dhz_ds);

struct EigenSystem {
    double e_minus;
    double e_plus;
    linalg::Vector minus;  // (cos theta, sin theta)
    linalg::Vector plus;   // (-sin theta, cos theta)
};

EigenSystem analytic_eigensystem(double hx, double hz);

// theta' Y
linalg::HermitianMatrix analytic_cd(double dtheta);

// -theta' sin(2 f+) [cos 2theta X - sin 2theta Z] - theta' cos(2 f+) Y
linalg::HermitianMatrix analytic_nad(double dtheta, double f_plus, double theta);

// (ad_O)^k dO = rate theta' (-i)^{k+1} (2 f+)^{k+1} W_k for k >= 1,
// W_k = i Y (odd k), cos 2theta X - sin 2theta Z (even k).
linalg::ComplexMatrix adjoint_series_term(int k, double rate, double dtheta, double f_plus,
                                          double theta);

}  // namespace ffscale::twolevel

#endif
