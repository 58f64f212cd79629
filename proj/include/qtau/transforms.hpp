#pragma once

// The Bernstein-type transform f_q and its relatives.
//
//   f_q(z) = (1-q) * ( z + c_q - sum_{k>=1} q^k/(1-q^k) * q^{kz} ),  Re z > 0,
//
// extended continuously by f_q(0) = 0.  At positive integers f_q(n) is the
// q-harmonic number H_n^{(q)}.  The reciprocal 1/f_q(z+1) is the Mellin-type
// symbol nu_q whose values at integers are 1/H_{n+1}^{(q)}.
//
// h_q is the non-increasing right-continuous step function on [0,inf):
//   h_q(t) = (1-q) * sum_{k > t/L} q^k/(1-q^k),  L = log(1/q),
// which represents f_q via  f_q(z)/z = (1-q) + int_0^inf e^{-tz} h_q(t) dt.

#include <complex>

#include "qtau/qkernel.hpp"

namespace qtau {

// f_q on the open right half-plane.  Throws std::domain_error if Re z <= 0
// or z is not finite.  The series cutoff is certified against budget.tol.
std::complex<double> f_q(std::complex<double> z, const QParam& qp,
                         const TruncationBudget& b);

// Real-axis specialization (z > 0), cheaper and used in hot loops.
double f_q(double z, const QParam& qp, const TruncationBudget& b);

// Same function computed through the digamma route,
//   f_q(z) = (1-q) * ( z + (gamma_q + psi_q(z+1)) / L ),
// kept as an independent route for cross-checks; z > 0.
double f_q_via_psi(double z, const QParam& qp, const TruncationBudget& b);

// f_q'(0) = (1-q) * (1 + L * sum_{k>=1} k q^k/(1-q^k)).  Governs the
// e^{-x}/f_q'(0) decay envelope of the density far to the right.
double f_q_prime_at_zero(const QParam& qp, const TruncationBudget& b);

// nu_q(z) = 1/f_q(z+1) for Re z >= 0.  The reciprocal is guarded: if
// |f_q(z+1)| < 1e-14 (cannot happen on the closed half-plane, but the guard
// keeps the failure loud) a std::domain_error is thrown.
std::complex<double> mellin_nu_q(std::complex<double> z, const QParam& qp,
                                 const TruncationBudget& b);
double mellin_nu_q(double z, const QParam& qp, const TruncationBudget& b);

// h_q(t) for t >= 0.  Right-continuous: the sum runs over k > t/L strictly,
// so h_q(nL) already excludes the k = n term.  Computed by direct tail
// summation starting at the first surviving index, which keeps tiny values
// (e.g. h_q(100 L) ~ q^{101}) fully accurate -- no cancellation anywhere.
double h_q(double t, const QParam& qp, const TruncationBudget& b);

// f_q(1 + iy) along the critical line, as a function of y.  Equivalent to
// f_q(std::complex{1, y}) but evaluated with the atom weights
// w_k = q^{2k}/(1-q^k) and a rotation recurrence for e^{-ikyL}; the
// oscillating part is periodic in y with period 2 pi / L.
std::complex<double> fourier_symbol(double y, const QParam& qp,
                                    const TruncationBudget& b);

}  // namespace qtau
