#pragma once

// Core q-series kernels on the admissible band q in (0,1):
//
//   log (a;q)_inf   log of the infinite q-Pochhammer product
//   c_q             sum_{k>=1} q^k/(1-q^k)   (Lambert series at the q-point)
//   Gamma_q         Jackson q-gamma function
//   psi_q           its logarithmic derivative
//   gamma_q (Euler) log(1-q) + log(1/q) * c_q, cached per parameter
//   H_n^{(q)}       q-harmonic numbers sum_{k<=n} (1-q)/(1-q^k)
//
// Every series here has a geometric-ish tail; cutoffs are derived from
// explicit tail bounds so the truncation error is certified <= budget.tol.
// Rounding error is not part of the certificate.

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qtau {

// Admissible band for the deformation parameter.  Outside it the geometric
// tail bounds (and double precision itself) stop being useful.
inline constexpr double kMinQ = 1e-6;
inline constexpr double kMaxQ = 1.0 - 1e-6;

// Classical Euler-Mascheroni constant, for q->1 comparisons only.
inline constexpr double kEulerGamma = 0.57721566490153286061;

struct TruncationBudget {
  double tol = 1e-13;             // certified absolute truncation target
  std::size_t max_terms = 1'000'000;
};

// Thrown when a certified cutoff would need more than budget.max_terms terms.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Validated q plus the derived quantities everything downstream keeps
// asking for: L = log(1/q), c_q, and the q-Euler constant gamma_q.
// Construction evaluates c_q under the given budget, so a q very close to 1
// can throw BudgetExceeded right here (e.g. q = 1 - 1e-6 needs ~6e7 terms
// at the default tolerance).
class QParam {
 public:
  explicit QParam(double q, TruncationBudget budget = {});

  double q() const { return q_; }
  double log_inv_q() const { return L_; }      // L = log(1/q) = -log q
  double c_q() const { return c_q_; }
  double euler_gamma_q() const { return euler_gamma_q_; }
  const TruncationBudget& budget() const { return budget_; }

 private:
  double q_;
  double L_;
  double c_q_;
  double euler_gamma_q_;
  TruncationBudget budget_;
};

// log (a;q)_inf = sum_{k>=0} log(1 - a q^k),  0 <= a < 1.
// Tail after K terms is bounded by a q^K / ((1-q)(1-a)).
double log_pochhammer_inf(double a, const QParam& qp, const TruncationBudget& b);

// Three independent routes to c_q; `lambert` is the workhorse.
//   lambert:                sum q^k/(1-q^k), certified geometric cutoff
//   divisor_series:         sum d(n) q^n with d(n) by trial division
//   pochhammer_complement:  sum_n (1 - (q^n; q)_inf)
enum class CqMethod { lambert, divisor_series, pochhammer_complement };

double c_q(const QParam& qp, const TruncationBudget& b,
           CqMethod method = CqMethod::lambert);

// Jackson's q-gamma, z > 0:
//   Gamma_q(z) = (q;q)_inf / (q^z;q)_inf * (1-q)^{1-z}.
// Evaluated in log space; Gamma_q(1) = Gamma_q(2) = 1.
double gamma_q(double z, const QParam& qp, const TruncationBudget& b);

// psi_q(z) = d/dz log Gamma_q(z), z > 0:
//   psi_q(z) = -log(1-q) + log(q) * sum_{k>=0} q^{k+z}/(1-q^{k+z}).
// psi_q(1) = -gamma_q (the q-Euler constant with flipped sign).
double psi_q(double z, const QParam& qp, const TruncationBudget& b);

// H_n^{(q)} = sum_{k=1..n} (1-q)/(1-q^k); H_0 = 0.  Exact finite sum.
double q_harmonic(int n, const QParam& qp);

// Classical harmonic number H_n, for the q->1 comparisons.
double harmonic(int n);

}  // namespace qtau
