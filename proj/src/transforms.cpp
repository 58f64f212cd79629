#include "qtau/transforms.hpp"

#include <cmath>

#include "internal.hpp"

namespace qtau {

using detail::KahanSum;
using detail::checked_cutoff;

namespace {

void require_right_half_plane(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || z.real() <= 0.0) {
    throw std::domain_error("f_q: need finite z with Re z > 0");
  }
}

// Series cutoff for sum_k q^k/(1-q^k) q^{kz}: the k-th term is bounded by
// q^{k(1+x)}/(1-q), x = Re z, so the tail after K terms is
// <= q^{(K+1)(1+x)} / ((1-q)(1-q^{1+x})).
std::size_t fq_cutoff(double x, const QParam& qp, const TruncationBudget& b) {
  const double L = qp.log_inv_q();
  const double r = (1.0 + x) * L;                 // decay rate per term
  const double omr = -std::expm1(-r);             // 1 - q^{1+x}
  const double hint =
      std::log(1.0 / (b.tol * (1.0 - qp.q()) * omr)) / r;
  return checked_cutoff(hint, 1, b, "f_q");
}

}  // namespace

std::complex<double> f_q(std::complex<double> z, const QParam& qp,
                         const TruncationBudget& b) {
  require_right_half_plane(z);
  const double q = qp.q();
  const double L = qp.log_inv_q();
  const std::size_t K = fq_cutoff(z.real(), qp, b);
  // term_k = q^k/(1-q^k) e^{-kzL}; accumulate with the complex geometric
  // factor advanced multiplicatively.
  const std::complex<double> step = std::exp(-z * L) * q;   // q^{1+z}
  std::complex<double> g = step;
  KahanSum re, im;
  for (std::size_t k = 1; k <= K; ++k) {
    const double denom = -std::expm1(-static_cast<double>(k) * L);
    re.add(g.real() / denom);
    im.add(g.imag() / denom);
    g *= step;
    if (g.real() == 0.0 && g.imag() == 0.0) break;
  }
  const std::complex<double> s(re.value(), im.value());
  return (1.0 - q) * (z + qp.c_q() - s);
}

double f_q(double z, const QParam& qp, const TruncationBudget& b) {
  require_right_half_plane({z, 0.0});
  const double q = qp.q();
  const double L = qp.log_inv_q();
  const std::size_t K = fq_cutoff(z, qp, b);
  const double step = std::exp(-(1.0 + z) * L);
  double g = step;
  KahanSum s;
  for (std::size_t k = 1; k <= K; ++k) {
    s.add(g / (-std::expm1(-static_cast<double>(k) * L)));
    g *= step;
    if (g == 0.0) break;
  }
  return (1.0 - q) * (z + qp.c_q() - s.value());
}

double f_q_via_psi(double z, const QParam& qp, const TruncationBudget& b) {
  if (!std::isfinite(z) || z <= 0.0) {
    throw std::domain_error("f_q_via_psi: need z > 0");
  }
  const double L = qp.log_inv_q();
  return (1.0 - qp.q()) *
         (z + (qp.euler_gamma_q() + psi_q(z + 1.0, qp, b)) / L);
}

double f_q_prime_at_zero(const QParam& qp, const TruncationBudget& b) {
  const double q = qp.q();
  const double L = qp.log_inv_q();
  const double omq = 1.0 - q;
  // (1-q)(1 + L sum_k k q^k/(1-q^k)); tail after K is
  // <= L q^{K+1}((K+1)(1-q)+q)/(1-q)^2  (coarse but monotone).
  KahanSum s;
  double qk = 1.0;
  for (std::size_t k = 1;; ++k) {
    if (k > b.max_terms) {
      throw BudgetExceeded("f_q_prime_at_zero: budget exhausted");
    }
    qk *= q;
    s.add(static_cast<double>(k) * qk /
          (-std::expm1(-static_cast<double>(k) * L)));
    const double tail = L * qk * q *
        ((static_cast<double>(k) + 1.0) * omq + q) / (omq * omq);
    if (tail <= b.tol) break;
  }
  return omq * (1.0 + L * s.value());
}

std::complex<double> mellin_nu_q(std::complex<double> z, const QParam& qp,
                                 const TruncationBudget& b) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || z.real() < 0.0) {
    throw std::domain_error("mellin_nu_q: need finite z with Re z >= 0");
  }
  const std::complex<double> w = f_q(z + 1.0, qp, b);
  if (std::abs(w) < 1e-14) {
    throw std::domain_error("mellin_nu_q: f_q(z+1) vanishes to working "
                            "precision; reciprocal is not meaningful");
  }
  return 1.0 / w;
}

double mellin_nu_q(double z, const QParam& qp, const TruncationBudget& b) {
  if (!std::isfinite(z) || z < 0.0) {
    throw std::domain_error("mellin_nu_q: need z >= 0");
  }
  const double w = f_q(z + 1.0, qp, b);
  if (std::abs(w) < 1e-14) {
    throw std::domain_error("mellin_nu_q: f_q(z+1) vanishes to working "
                            "precision; reciprocal is not meaningful");
  }
  return 1.0 / w;
}

double h_q(double t, const QParam& qp, const TruncationBudget& b) {
  if (!std::isfinite(t) || t < 0.0) {
    throw std::domain_error("h_q: need t >= 0");
  }
  const double q = qp.q();
  const double L = qp.log_inv_q();
  // First surviving index: smallest k with k > t/L.
  std::size_t n = static_cast<std::size_t>(std::floor(t / L));
  while ((static_cast<double>(n) + 1.0) * L <= t) ++n;
  while (n > 0 && static_cast<double>(n) * L > t) --n;
  // Relative-accuracy cutoff: m more terms leave a tail
  // <= q^{n+m+1}/((1-q)(1-q^{n+m+1})), i.e. a factor ~q^m below the leading
  // term, so small values (t >> 0) come out fully accurate, not just
  // accurate to tol.
  const double hint = std::log(1.0 / (b.tol * (1.0 - q))) / L;
  const std::size_t m = checked_cutoff(hint, 1, b, "h_q");
  KahanSum s;
  double qk = std::exp(-(static_cast<double>(n) + 1.0) * L);
  for (std::size_t k = n + 1; k <= n + m; ++k) {
    if (qk == 0.0) break;
    s.add(qk / (-std::expm1(-static_cast<double>(k) * L)));
    qk *= q;
  }
  return (1.0 - q) * s.value();
}

std::complex<double> fourier_symbol(double y, const QParam& qp,
                                    const TruncationBudget& b) {
  if (!std::isfinite(y)) {
    throw std::domain_error("fourier_symbol: need finite y");
  }
  const double q = qp.q();
  const double L = qp.log_inv_q();
  // Atom weights w_k = q^{2k}/(1-q^k) decay like q^{2k}:
  // tail after K <= q^{2(K+1)}/((1-q)(1-q^2)).
  const double hint =
      std::log(1.0 / (b.tol * (1.0 - q) * (1.0 - q * q))) / (2.0 * L);
  const std::size_t K = checked_cutoff(hint, 1, b, "fourier_symbol");
  const std::complex<double> rot(std::cos(y * L), -std::sin(y * L));
  std::complex<double> zk = rot;
  KahanSum re, im;
  double q2k = 1.0;
  for (std::size_t k = 1; k <= K; ++k) {
    q2k *= q * q;
    const double w = q2k / (-std::expm1(-static_cast<double>(k) * L));
    re.add(w * zk.real());
    im.add(w * zk.imag());
    zk *= rot;
  }
  const std::complex<double> s(re.value(), im.value());
  return (1.0 - q) * (std::complex<double>(1.0 + qp.c_q(), y) - s);
}

}  // namespace qtau
