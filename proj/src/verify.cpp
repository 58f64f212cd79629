#include "qtau/verify.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "qtau/transforms.hpp"
#include "internal.hpp"

namespace qtau {

using detail::KahanSum;

namespace {

struct GaussRule {
  std::vector<double> x;   // nodes on [-1, 1]
  std::vector<double> w;
};

// Golub-Welsch is overkill for two fixed orders; Newton on the Legendre
// recurrence converges in a handful of steps from the Chebyshev guess.
GaussRule gauss_legendre(int n) {
  GaussRule r;
  r.x.assign(n, 0.0);
  r.w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 64; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return r;
}

const GaussRule& rule24() { static const GaussRule r = gauss_legendre(24); return r; }
const GaussRule& rule20() { static const GaussRule r = gauss_legendre(20); return r; }
const GaussRule& rule12() { static const GaussRule r = gauss_legendre(12); return r; }

}  // namespace

std::size_t laplace_piece_count(const QParam& qp, const TruncationBudget& b) {
  // tau_q(x) ~ e^{-x} / f_q'(0) far right (rightmost singularity of the
  // Laplace transform sits at z = -1 because f_q(0) = 0); ask the envelope
  // for ~1e-10 of residual mass and pad a little.
  const double fp0 = f_q_prime_at_zero(qp, b);
  const double x_needed = std::log(1e10) - std::log(fp0);
  const double n = std::ceil(x_needed / qp.log_inv_q()) + 6.0;
  return static_cast<std::size_t>(std::max(30.0, n));
}

QuadratureResult laplace_by_quadrature(double z, const QParam& qp,
                                       const ConvPowerTable& table,
                                       double x_max) {
  if (!std::isfinite(z) || z < 0.0) {
    throw std::domain_error("laplace_by_quadrature: need z >= 0");
  }
  const double L = qp.log_inv_q();
  const double n_real = x_max / L;
  const auto pieces = static_cast<std::size_t>(std::llround(n_real));
  if (!(x_max > 0.0) || std::abs(n_real - static_cast<double>(pieces)) > 1e-9 ||
      pieces < 25) {
    throw std::domain_error(
        "laplace_by_quadrature: x_max must be a whole number of pieces, "
        "at least 25 of them");
  }
  if (pieces > table.depth()) {
    throw std::out_of_range(
        "laplace_by_quadrature: table depth does not cover x_max");
  }
  const double omq = 1.0 - qp.q();
  KahanSum hi, lo;
  for (std::size_t n = 0; n < pieces; ++n) {
    const double a = static_cast<double>(n) * L;
    const double mid = a + 0.5 * L;
    const double half = 0.5 * L;
    for (int i = 0; i < 24; ++i) {
      const double x = mid + half * rule24().x[i];
      hi.add(rule24().w[i] * std::exp(-z * x) *
             tau_scaled_on_piece(x, n, qp, table));
    }
    for (int i = 0; i < 12; ++i) {
      const double x = mid + half * rule12().x[i];
      lo.add(rule12().w[i] * std::exp(-z * x) *
             tau_scaled_on_piece(x, n, qp, table));
    }
  }
  const double half = 0.5 * L;
  QuadratureResult r;
  r.value = hi.value() * half / omq;
  r.error_estimate = std::abs((hi.value() - lo.value()) * half / omq);
  r.pieces_used = pieces;
  // Envelope estimate for the missing right tail (not a certificate).
  r.tail_bound = 2.0 * std::exp(-(1.0 + z) * x_max) /
                 f_q_prime_at_zero(qp, qp.budget());
  return r;
}

QuadratureResult fourier_inversion_oracle(double x, const QParam& qp,
                                          double y_max,
                                          const TruncationBudget& b) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::domain_error("fourier_inversion_oracle: need x >= 0");
  }
  const double q = qp.q();
  const double L = qp.log_inv_q();
  const AtomicMeasure mu = build_mu(qp, b);
  const double mass = mu.total_mass();
  if (!(y_max > 4.0 * (mass + 1.0))) {
    throw std::domain_error(
        "fourier_inversion_oracle: y_max too small for the tail bound");
  }
  const std::size_t kw = mu.weights.size();
  // Panel length shrinks with both the target oscillation e^{ixy} and the
  // symbol's own oscillation scale kw * L (its series carries e^{-ikyL}).
  const double h = 14.0 / (x + static_cast<double>(kw) * L + 1.0);
  const auto panels = static_cast<std::size_t>(std::ceil(y_max / h));
  if (panels > 4'000'000) {
    throw BudgetExceeded("fourier_inversion_oracle: panel count over budget");
  }
  const double omq = 1.0 - q;
  const double cq = qp.c_q();

  // phi_hat(y) = 2 Re f / |f|^2 at f = f_q(1+iy), with the symbol series
  // evaluated from the precomputed weights (rotation recurrence per node).
  auto g = [&](double y) {
    const std::complex<double> rot(std::cos(y * L), -std::sin(y * L));
    std::complex<double> zk = rot;
    double sre = 0.0, sim = 0.0;
    for (std::size_t k = 0; k < kw; ++k) {
      sre += mu.weights[k] * zk.real();
      sim += mu.weights[k] * zk.imag();
      zk *= rot;
    }
    const double fre = omq * (1.0 + cq - sre);
    const double fim = omq * (y - sim);
    return 2.0 * fre / (fre * fre + fim * fim);
  };

  KahanSum hi, lo;
  const double step = y_max / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = (static_cast<double>(p) + 0.5) * step;
    const double half = 0.5 * step;
    for (int i = 0; i < 20; ++i) {
      const double y = mid + half * rule20().x[i];
      hi.add(rule20().w[i] * std::cos(x * y) * g(y));
    }
    for (int i = 0; i < 12; ++i) {
      const double y = mid + half * rule12().x[i];
      lo.add(rule12().w[i] * std::cos(x * y) * g(y));
    }
  }
  const double half = 0.5 * step;
  const double inv_pi = 1.0 / std::numbers::pi;
  QuadratureResult r;
  r.value = hi.value() * half * inv_pi;
  r.error_estimate = std::abs((hi.value() - lo.value()) * half * inv_pi);
  r.pieces_used = panels;
  // |f(1+iy)| >= (1-q)(y - ||mu||) and Re f <= (1-q)(1 + c_q + ||mu||), so
  // the discarded tail is at most (1/pi) * 2 B / ((1-q)^2 (y_max - ||mu||)).
  const double bq = omq * (1.0 + cq + mass);
  r.tail_bound = inv_pi * 2.0 * bq / (omq * omq * (y_max - mass));
  const double dist = std::abs(x - std::round(x / L) * L);
  r.slow_convergence = dist < 1e-6;
  return r;
}

double one_sided_derivative(double x0, Side side, const QParam& qp,
                            const ConvPowerTable& table) {
  const double L = qp.log_inv_q();
  const double h = L / 512.0;
  const double sgn = (side == Side::right) ? 1.0 : -1.0;
  if (side == Side::left && x0 < h) {
    throw std::domain_error(
        "one_sided_derivative: left stencil would leave [0, inf)");
  }
  const double f0 = tau_scaled(x0, qp, table);
  // One-sided quotients D(h) = sgn*(f(x0 + sgn h) - f0)/h at h, h/2, h/4,
  // then two Richardson stages assuming the O(h), O(h^2) error ladder.
  double d[3];
  double hh = h;
  for (int i = 0; i < 3; ++i) {
    d[i] = sgn * (tau_scaled(x0 + sgn * hh, qp, table) - f0) / hh;
    hh *= 0.5;
  }
  const double r1 = 2.0 * d[1] - d[0];
  const double r2 = 2.0 * d[2] - d[1];
  return (4.0 * r2 - r1) / 3.0;
}

double compositions_bruteforce(std::size_t k, std::size_t j, const QParam& qp) {
  if (k < 1 || j < k || j > 14) {
    throw std::domain_error(
        "compositions_bruteforce: need 1 <= k <= j <= 14");
  }
  const double L = qp.log_inv_q();
  auto w = [&](std::size_t p) {
    return std::exp(-2.0 * static_cast<double>(p) * L) /
           (-std::expm1(-static_cast<double>(p) * L));
  };
  // Depth-first over compositions j = p_1 + ... + p_k, p_i >= 1.
  double total = 0.0;
  struct Frame { std::size_t remaining_parts, remaining_sum; double prod; };
  std::vector<Frame> stack{{k, j, 1.0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.remaining_parts == 1) {
      total += f.prod * w(f.remaining_sum);
      continue;
    }
    // Leave at least 1 for each of the other parts.
    const std::size_t pmax = f.remaining_sum - (f.remaining_parts - 1);
    for (std::size_t p = 1; p <= pmax; ++p) {
      stack.push_back({f.remaining_parts - 1, f.remaining_sum - p,
                       f.prod * w(p)});
    }
  }
  return total;
}

}  // namespace qtau
