#include "qtau/qkernel.hpp"

#include <cmath>

#include "internal.hpp"

namespace qtau {

using detail::KahanSum;
using detail::checked_cutoff;

QParam::QParam(double q, TruncationBudget budget) : q_(q), budget_(budget) {
  if (!std::isfinite(q_) || q_ < kMinQ || q_ > kMaxQ) {
    throw std::domain_error("QParam: q must lie in [1e-6, 1 - 1e-6]");
  }
  if (!(budget_.tol > 0.0) || budget_.max_terms == 0) {
    throw std::domain_error("QParam: budget must have tol > 0 and max_terms > 0");
  }
  L_ = -std::log(q_);
  c_q_ = qtau::c_q(*this, budget_);   // uses only q_ and L_, set above
  euler_gamma_q_ = std::log1p(-q_) + L_ * c_q_;
}

double log_pochhammer_inf(double a, const QParam& qp, const TruncationBudget& b) {
  if (!std::isfinite(a) || a < 0.0 || a >= 1.0) {
    throw std::domain_error("log_pochhammer_inf: need 0 <= a < 1");
  }
  if (a == 0.0) return 0.0;
  const double q = qp.q();
  const double L = qp.log_inv_q();
  // |tail after K terms| <= a q^K / ((1-q)(1-a))
  const double hint =
      std::log(a / (b.tol * (1.0 - q) * (1.0 - a))) / L;
  const std::size_t K = checked_cutoff(hint, 1, b, "log_pochhammer_inf");
  KahanSum s;
  double aqk = a;
  for (std::size_t k = 0; k < K; ++k) {
    s.add(std::log1p(-aqk));
    aqk *= q;
  }
  return s.value();
}

namespace {

// Number of divisors by trial division; n stays modest (the divisor-series
// route is a cross-check, not a hot path).
std::size_t divisor_count(std::size_t n) {
  std::size_t d = 0;
  for (std::size_t i = 1; i * i <= n; ++i) {
    if (n % i == 0) d += (i * i == n) ? 1 : 2;
  }
  return d;
}

double c_q_lambert(double q, double L, const TruncationBudget& b) {
  // tail after K terms <= q^{K+1} / (1-q)^2
  const double hint = std::log(1.0 / (b.tol)) / L + 2.0 * (-std::log1p(-q)) / L;
  const std::size_t K = checked_cutoff(hint, 1, b, "c_q(lambert)");
  KahanSum s;
  double qk = 1.0;
  for (std::size_t k = 1; k <= K; ++k) {
    qk *= q;
    s.add(qk / (-std::expm1(-static_cast<double>(k) * L)));
  }
  return s.value();
}

double c_q_divisor(double q, const TruncationBudget& b) {
  // c_q = sum_{n>=1} d(n) q^n; since d(n) <= n,
  // tail after N <= q^{N+1} ((N+1)(1-q) + q)/(1-q)^2.
  const double omq = 1.0 - q;
  KahanSum s;
  double qn = 1.0;
  for (std::size_t n = 1;; ++n) {
    if (n > b.max_terms) {
      throw BudgetExceeded("c_q(divisor_series): budget exhausted before the "
                           "tail bound reached tol");
    }
    qn *= q;
    s.add(static_cast<double>(divisor_count(n)) * qn);
    const double tail = qn * q *
        ((static_cast<double>(n) + 1.0) * omq + q) / (omq * omq);
    if (tail <= b.tol) break;
  }
  return s.value();
}

double c_q_pochhammer(double q, double L, const QParam& qp,
                      const TruncationBudget& b) {
  // c_q = sum_{n>=1} (1 - (q^n; q)_inf); the summand is <= q^n/(1-q), so the
  // outer tail matches the Lambert bound.  Inner products get tol/(2N) each.
  const double hint =
      std::log(2.0 / b.tol) / L + 2.0 * (-std::log1p(-q)) / L;
  const std::size_t N = checked_cutoff(hint, 1, b, "c_q(pochhammer)");
  TruncationBudget inner = b;
  inner.tol = b.tol / (2.0 * static_cast<double>(N));
  KahanSum s;
  double qn = 1.0;
  for (std::size_t n = 1; n <= N; ++n) {
    qn *= q;
    s.add(-std::expm1(log_pochhammer_inf(qn, qp, inner)));
  }
  return s.value();
}

}  // namespace

double c_q(const QParam& qp, const TruncationBudget& b, CqMethod method) {
  const double q = qp.q();
  const double L = qp.log_inv_q();
  switch (method) {
    case CqMethod::lambert:
      return c_q_lambert(q, L, b);
    case CqMethod::divisor_series:
      return c_q_divisor(q, b);
    case CqMethod::pochhammer_complement:
      return c_q_pochhammer(q, L, qp, b);
  }
  throw std::domain_error("c_q: unknown method");
}

double gamma_q(double z, const QParam& qp, const TruncationBudget& b) {
  if (!std::isfinite(z) || z <= 0.0) {
    throw std::domain_error("gamma_q: need z > 0");
  }
  const double q = qp.q();
  const double L = qp.log_inv_q();
  const double qz = std::exp(-z * L);
  const double lp_q = log_pochhammer_inf(q, qp, b);
  const double lp_qz = (qz > 0.0) ? log_pochhammer_inf(qz, qp, b) : 0.0;
  return std::exp(lp_q - lp_qz + (1.0 - z) * std::log1p(-q));
}

double psi_q(double z, const QParam& qp, const TruncationBudget& b) {
  if (!std::isfinite(z) || z <= 0.0) {
    throw std::domain_error("psi_q: need z > 0");
  }
  const double q = qp.q();
  const double L = qp.log_inv_q();
  const double t0 = std::exp(-z * L);   // q^z
  if (t0 == 0.0) return -std::log1p(-q);
  // tail after K terms of sum q^{k+z}/(1-q^{k+z}), scaled by L:
  //   L q^{K+z} / ((1-q^z)(1-q)) <= tol
  const double omqz = -std::expm1(-z * L);
  const double hint =
      std::log(L / (b.tol * omqz * (1.0 - q))) / L - z;
  const std::size_t K = checked_cutoff(hint, 1, b, "psi_q");
  KahanSum s;
  double t = t0;
  for (std::size_t k = 0; k < K; ++k) {
    s.add(t / (1.0 - t));
    t *= q;
    if (t == 0.0) break;
  }
  return -std::log1p(-q) - L * s.value();
}

double q_harmonic(int n, const QParam& qp) {
  if (n < 0) throw std::domain_error("q_harmonic: need n >= 0");
  const double omq = 1.0 - qp.q();
  const double L = qp.log_inv_q();
  KahanSum s;
  for (int k = 1; k <= n; ++k) {
    s.add(omq / (-std::expm1(-static_cast<double>(k) * L)));
  }
  return s.value();
}

double harmonic(int n) {
  if (n < 0) throw std::domain_error("harmonic: need n >= 0");
  KahanSum s;
  for (int k = n; k >= 1; --k) s.add(1.0 / static_cast<double>(k));
  return s.value();
}

}  // namespace qtau
