#pragma once

// Numerical oracles that check the closed-form machinery by independent
// routes: Laplace transform of the density by quadrature (should give
// 1/f_q(z+1)), Fourier inversion of the explicit symbol (should give
// tau_q back), one-sided derivatives at breakpoints (should reproduce the
// jump weights), and brute-force composition sums (should reproduce the
// convolution-power table).

#include <complex>
#include <cstddef>

#include "qtau/density.hpp"
#include "qtau/qkernel.hpp"

namespace qtau {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;   // high-order vs lower-order rule delta
  std::size_t pieces_used = 0;   // panels actually integrated
  double tail_bound = 0.0;       // estimate for the discarded tail
  // Set when the target point sits within 1e-6 of a lattice point, where
  // the integrand's kink slows the oscillatory quadrature down.
  bool slow_convergence = false;
};

// Piece count whose truncated window loses at most ~1e-10 of Laplace mass,
// using the e^{-x}/f_q'(0) right-tail envelope; never below 30.
std::size_t laplace_piece_count(const QParam& qp, const TruncationBudget& b);

// int_0^{x_max} e^{-zx} tau_q(x) dx by per-piece Gauss-Legendre (order 24,
// with an order-12 pass for the error estimate).  x_max must be an integer
// number of pieces and cover at least 25 of them; the table must be at
// least that deep.  z >= 0.
QuadratureResult laplace_by_quadrature(double z, const QParam& qp,
                                       const ConvPowerTable& table,
                                       double x_max);

// tau_q(x) recovered from the Fourier symbol:
//   tau_q(x) = (1/pi) * int_0^{y_max} cos(xy) * 2 Re f_q(1+iy)/|f_q(1+iy)|^2 dy
// (the transform of tau_q is 2 Re f / |f|^2 evaluated at 1+iy).  Panel
// length shrinks with x so the cosine stays resolved; tail_bound covers the
// discarded [y_max, inf) using |f(1+iy)| >= (1-q)(y - ||mu||).
QuadratureResult fourier_inversion_oracle(double x, const QParam& qp,
                                          double y_max,
                                          const TruncationBudget& b);

enum class Side { left, right };

// One-sided derivative of (1-q) tau_q at x0 by Richardson extrapolation of
// one-sided difference quotients with steps h, h/2, h/4, h = L/512.
// Throws std::domain_error when the stencil would leave [0, inf) (left
// side at x0 < h).
double one_sided_derivative(double x0, Side side, const QParam& qp,
                            const ConvPowerTable& table);

// sum over compositions j = p_1 + ... + p_k of w_{p_1} * ... * w_{p_k},
// enumerated explicitly.  Exponential in j; capped at j <= 14.
double compositions_bruteforce(std::size_t k, std::size_t j, const QParam& qp);

}  // namespace qtau
