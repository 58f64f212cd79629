#include "qtau/density.hpp"

#include <cmath>

#include "internal.hpp"

namespace qtau {

using detail::KahanSum;
using detail::checked_cutoff;

double AtomicMeasure::total_mass() const {
  KahanSum s;
  for (double w : weights) s.add(w);
  return s.value();
}

AtomicMeasure build_mu(const QParam& qp, const TruncationBudget& b) {
  const double q = qp.q();
  const double L = qp.log_inv_q();
  // Discarded mass after K atoms: sum_{k>K} q^{2k}/(1-q^k)
  // <= q^{2(K+1)} / ((1-q)(1-q^2)).
  const double hint =
      std::log(1.0 / (b.tol * (1.0 - q) * (1.0 - q * q))) / (2.0 * L);
  const std::size_t K = checked_cutoff(hint, 1, b, "build_mu");
  AtomicMeasure mu;
  mu.lattice_step = L;
  mu.weights.reserve(K);
  double q2k = 1.0;
  for (std::size_t k = 1; k <= K; ++k) {
    q2k *= q * q;
    mu.weights.push_back(q2k / (-std::expm1(-static_cast<double>(k) * L)));
  }
  return mu;
}

ConvPowerTable::ConvPowerTable(const AtomicMeasure& mu, std::size_t depth)
    : depth_(depth), rows_(depth + 1) {
  const std::size_t kw = mu.weights.size();
  auto w = [&](std::size_t p) -> double {
    return (p >= 1 && p <= kw) ? mu.weights[p - 1] : 0.0;
  };
  for (std::size_t k = 0; k <= depth; ++k) rows_[k].assign(depth + 1, 0.0);
  rows_[0][0] = 1.0;   // mu^{*0} = delta_0
  for (std::size_t k = 1; k <= depth; ++k) {
    for (std::size_t j = k; j <= depth; ++j) {
      // M[k][j] = sum_p w_p M[k-1][j-p]; the inner index p runs over the
      // lattice gap left for the last atom.
      KahanSum s;
      for (std::size_t p = 1; p + (k - 1) <= j; ++p) {
        s.add(w(p) * rows_[k - 1][j - p]);
      }
      const double v = s.value();
      if (!std::isfinite(v)) {
        throw std::overflow_error(
            "ConvPowerTable: entry overflowed double range; reduce depth");
      }
      rows_[k][j] = v;
    }
  }
}

double ConvPowerTable::value(std::size_t k, std::size_t j) const {
  if (k > depth_ || j > depth_) {
    throw std::out_of_range("ConvPowerTable::value: index beyond depth");
  }
  return rows_[k][j];
}

std::size_t piece_index(double x, const QParam& qp) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::domain_error("piece_index: need x >= 0");
  }
  const double L = qp.log_inv_q();
  std::size_t n = static_cast<std::size_t>(std::floor(x / L));
  // Fix up rounding of x/L so that x == n*L (as doubles) maps to piece n.
  while ((static_cast<double>(n) + 1.0) * L <= x) ++n;
  while (n > 0 && static_cast<double>(n) * L > x) --n;
  return n;
}

double tau_scaled_on_piece(double x, std::size_t piece, const QParam& qp,
                           const ConvPowerTable& table) {
  if (!std::isfinite(x)) {
    throw std::domain_error("tau_scaled_on_piece: need finite x");
  }
  if (piece > table.depth()) {
    throw std::out_of_range("tau_scaled_on_piece: piece beyond table depth");
  }
  const double L = qp.log_inv_q();
  const double rate = 1.0 + qp.c_q();
  KahanSum acc;
  for (std::size_t j = 0; j <= piece; ++j) {
    const double u = x - static_cast<double>(j) * L;
    // P_j(u) = sum_k u^k/k! M[k][j] by a factorial-free Horner:
    // each level multiplies by u/k, so no k! is ever formed (k! overflows
    // double for k >= 171 while the table can go deeper than that).
    double p = table.value(j, j);
    for (std::size_t k = j; k >= 1; --k) {
      p = p * (u / static_cast<double>(k)) + table.value(k - 1, j);
    }
    const double term = std::exp(-rate * u) * p;
    // P_j(0) = 0 for j >= 1, so at a breakpoint the new piece contributes an
    // exact zero; skipping it keeps the two one-sided evaluations bitwise
    // equal (a Kahan add of 0.0 would still fold the compensation term in).
    if (term != 0.0) acc.add(term);
  }
  return acc.value();
}

double tau_scaled(double x, const QParam& qp, const ConvPowerTable& table) {
  return tau_scaled_on_piece(x, piece_index(x, qp), qp, table);
}

double tau_density(double x, const QParam& qp, const ConvPowerTable& table) {
  return tau_scaled(x, qp, table) / (1.0 - qp.q());
}

double tau_series_term(double x, std::size_t k, const QParam& qp,
                       const ConvPowerTable& table) {
  const std::size_t n = piece_index(x, qp);
  if (n > table.depth()) {
    throw std::out_of_range("tau_series_term: x beyond table depth");
  }
  if (k > n) return 0.0;
  const double L = qp.log_inv_q();
  const double rate = 1.0 + qp.c_q();
  KahanSum acc;
  for (std::size_t j = k; j <= n; ++j) {
    const double u = x - static_cast<double>(j) * L;
    double t = 1.0;                       // u^k / k!, built incrementally
    for (std::size_t m = 1; m <= k; ++m) t *= u / static_cast<double>(m);
    acc.add(std::exp(-rate * u) * t * table.value(k, j));
  }
  return acc.value();
}

double nu_density_haar(double t, const QParam& qp, const ConvPowerTable& table) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw std::domain_error("nu_density_haar: need t in (0, 1]");
  }
  return tau_density(-std::log(t), qp, table);
}

double derivative_jump(std::size_t n, const QParam& qp) {
  if (n < 1) throw std::domain_error("derivative_jump: need n >= 1");
  const double L = qp.log_inv_q();
  const double q2n = std::exp(-2.0 * static_cast<double>(n) * L);
  const double omqn = -std::expm1(-static_cast<double>(n) * L);
  return q2n / (omqn * (1.0 - qp.q()));
}

double nu_derivative_jump(std::size_t n, const QParam& qp) {
  // chain rule through x = log(1/t): d/dt picks up 1/t = q^{-n} at t = q^n
  return derivative_jump(n, qp) *
         std::exp(static_cast<double>(n) * qp.log_inv_q());
}

}  // namespace qtau
