#pragma once

// The limit density tau_q as a piecewise exponential-polynomial on the
// lattice { n L : n >= 0 }, L = log(1/q).
//
// Everything is driven by the atomic measure mu on the lattice with weights
//   w_k = q^{2k} / (1-q^k),   k >= 1,
// and the table of its convolution powers restricted to lattice points:
//   M[k][j] = (mu^{*k})({j L}) = sum over compositions j = p_1+...+p_k
//             of w_{p_1} ... w_{p_k}.
//
// On the piece x in [n L, (n+1) L):
//   (1-q) tau_q(x) = sum_{j=0..n} e^{-(1+c_q)(x - jL)} P_j(x - jL),
//   P_j(u) = sum_{k=0..j} u^k/k! * M[k][j],   P_0 = 1.
//
// Consequences used by the tests and the oracles:
//   * (1-q) tau_q(0) = 1 exactly, and (1-q) tau_q <= 1 everywhere;
//   * tau_q is continuous at the breakpoints (P_n(0) = 0 for n >= 1, so the
//     two one-sided evaluations agree *exactly*, even in floating point);
//   * tau_q' jumps at nL by w_n / (1-q) = q^{2n} / ((1-q^n)(1-q)).

#include <cstddef>
#include <vector>

#include "qtau/qkernel.hpp"

namespace qtau {

// mu restricted to its certified support prefix: weights[k-1] = w_k.
struct AtomicMeasure {
  double lattice_step;            // L
  std::vector<double> weights;    // w_1, w_2, ...
  double total_mass() const;      // ||mu|| = c_q - q/(1-q) up to budget.tol
};

// Truncate mu so the discarded tail of total mass is <= b.tol.
AtomicMeasure build_mu(const QParam& qp, const TruncationBudget& b);

// Lower-triangular table of convolution powers, M[k][j] for k,j <= depth.
// Built once per (q, window) and shared by every evaluation.
class ConvPowerTable {
 public:
  ConvPowerTable(const AtomicMeasure& mu, std::size_t depth);

  // M[k][j]; zero when j < k or k == 0 != j.  Bounds-checked.
  double value(std::size_t k, std::size_t j) const;
  std::size_t depth() const { return depth_; }

 private:
  std::size_t depth_;
  std::vector<std::vector<double>> rows_;   // rows_[k][j]
};

// Index n with x in [nL, (n+1)L).  floor(x/L) with an exactness fix-up so
// that lattice points land on their *right* piece even when x was produced
// as n*L in floating point.  Requires x >= 0.
std::size_t piece_index(double x, const QParam& qp);

// (1-q) tau_q(x); piece chosen by piece_index.  Throws std::out_of_range
// if the required piece exceeds table.depth().
double tau_scaled(double x, const QParam& qp, const ConvPowerTable& table);

// Same sum but with the piece forced; lets callers evaluate one-sided
// limits at breakpoints (piece = n-1 at x = nL gives the left limit).
double tau_scaled_on_piece(double x, std::size_t piece, const QParam& qp,
                           const ConvPowerTable& table);

// tau_q(x) itself.
double tau_density(double x, const QParam& qp, const ConvPowerTable& table);

// The order-k convolution term of (1-q) tau_q at x: the contribution of
// mu^{*k}, i.e. sum_{j>=k} e^{-(1+c_q)(x-jL)} (x-jL)^k/k! M[k][j] over the
// pieces j <= piece_index(x).  Summing over k recovers tau_scaled.
double tau_series_term(double x, std::size_t k, const QParam& qp,
                       const ConvPowerTable& table);

// Density of the limit law in the multiplicative variable t = e^{-x},
// taken with respect to the Haar measure dt/t on (0,1]:
//   nu_tilde_q(t) = tau_q(log(1/t)).
double nu_density_haar(double t, const QParam& qp, const ConvPowerTable& table);

// Jump of tau_q' at x = nL (n >= 1):  q^{2n} / ((1-q^n)(1-q)).
double derivative_jump(std::size_t n, const QParam& qp);

// The matching jump in the t variable at t = q^n, i.e. derivative_jump
// pushed through x = log(1/t):  derivative_jump(n)/q^n
//   = q^n / ((1-q^n)(1-q)).
double nu_derivative_jump(std::size_t n, const QParam& qp);

}  // namespace qtau
