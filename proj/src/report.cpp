#include "qtau/report.hpp"

#include <cmath>
#include <complex>

#include "qtau/density.hpp"
#include "qtau/io.hpp"
#include "qtau/iteration.hpp"
#include "qtau/transforms.hpp"
#include "qtau/verify.hpp"

namespace qtau {

namespace {

CheckResult make_check(std::string name, double target, double measured,
                       double tolerance) {
  const bool pass = std::isfinite(measured) &&
                    std::abs(measured - target) <= tolerance;
  return {std::move(name), target, measured, tolerance, pass};
}

std::string tag(const std::string& base, double q) {
  return base + "[q=" + format_double(q) + "]";
}

void checks_for_q(double q, VerifyLevel level, const TruncationBudget& b,
                  std::vector<CheckResult>& out) {
  const QParam qp(q, b);
  const double L = qp.log_inv_q();
  const double omq = 1.0 - q;

  // c_q by three independent series.
  {
    const double a = c_q(qp, b, CqMethod::lambert);
    const double d = c_q(qp, b, CqMethod::divisor_series);
    const double p = c_q(qp, b, CqMethod::pochhammer_complement);
    const double spread = std::max({std::abs(a - d), std::abs(a - p),
                                    std::abs(d - p)});
    out.push_back(make_check(tag("c_q_route_spread", q), 0.0, spread, 1e-11));
  }

  const AtomicMeasure mu = build_mu(qp, b);
  out.push_back(make_check(tag("mu_mass_identity", q),
                           qp.c_q() - q / omq, mu.total_mass(), 1e-11));

  out.push_back(make_check(tag("f_q_psi_route_z2", q), f_q(2.0, qp, b),
                           f_q_via_psi(2.0, qp, b), 1e-11));

  // Laplace moments of the density against 1/H_{n+1}^{(q)}.
  const std::size_t pieces = laplace_piece_count(qp, b);
  const ConvPowerTable table(mu, pieces);
  const double x_max = static_cast<double>(pieces) * L;
  out.push_back(make_check(tag("laplace_moment_n0", q), 1.0,
                           laplace_by_quadrature(0.0, qp, table, x_max).value,
                           1e-9));
  out.push_back(make_check(tag("laplace_moment_n3", q),
                           1.0 / q_harmonic(4, qp),
                           laplace_by_quadrature(3.0, qp, table, x_max).value,
                           1e-8));

  // Second piece, written out from the first two atoms.
  {
    const double x = 1.5 * L;
    const double w1 = q * q / omq;
    const double closed = std::exp(-(1.0 + qp.c_q()) * x) +
                          std::exp(-(1.0 + qp.c_q()) * (x - L)) * w1 * (x - L);
    out.push_back(make_check(tag("piece1_two_atom_form", q), closed,
                             tau_scaled(x, qp, table), 1e-12));
  }

  {
    double cont = 0.0, jump_err = 0.0;
    for (std::size_t n = 1; n <= 3; ++n) {
      const double xb = static_cast<double>(n) * L;
      cont = std::max(cont,
                      std::abs(tau_scaled_on_piece(xb, n - 1, qp, table) -
                               tau_scaled_on_piece(xb, n, qp, table)));
      const double dr = one_sided_derivative(xb, Side::right, qp, table);
      const double dl = one_sided_derivative(xb, Side::left, qp, table);
      const double want = omq * derivative_jump(n, qp);   // jump of (1-q)tau'
      jump_err = std::max(jump_err, std::abs((dr - dl) - want) / want);
    }
    out.push_back(make_check(tag("continuity_max_n1_3", q), 0.0, cont, 1e-12));
    out.push_back(make_check(tag("jump_rel_err_max_n1_3", q), 0.0, jump_err,
                             1e-6));
  }

  // f_q(z)/z = (1-q) + int e^{-tz} h_q(t) dt at z = 1; h_q is a lattice step
  // function, so the integral is a sum of exact exponential steps.
  {
    const double z = 1.0;
    double integral = 0.0;
    for (std::size_t n = 0; n < 2000; ++n) {
      const double t0 = static_cast<double>(n) * L;
      const double hn = h_q(t0, qp, b);
      if (hn == 0.0) break;
      const double e0 = std::exp(-z * t0);
      const double e1 = std::exp(-z * (t0 + L));
      integral += hn * (e0 - e1) / z;
      if (hn * e1 < 1e-18) break;
    }
    out.push_back(make_check(tag("h_q_laplace_route_z1", q),
                             f_q(1.0, qp, b) / 1.0, omq + integral, 1e-10));
  }

  {
    const MomentSequence fp = fixed_point_m(50);
    const MomentSequence orb = orbit_from_delta_q(qp, 100, 50);
    out.push_back(make_check(tag("orbit_distance_after_100", q), 0.0,
                             k_distance(orb, fp).value, 1e-12));
  }

  if (level == VerifyLevel::fast) return;

  {
    double worst = 0.0;
    for (int n = 0; n <= 10; ++n) {
      const double got =
          laplace_by_quadrature(static_cast<double>(n), qp, table, x_max).value;
      worst = std::max(worst, std::abs(got - 1.0 / q_harmonic(n + 1, qp)));
    }
    out.push_back(make_check(tag("laplace_moments_max_n0_10", q), 0.0, worst,
                             1e-8));
  }
  {
    double worst = 0.0;
    for (int n = 0; n <= 20; ++n) {
      worst = std::max(worst,
                       std::abs(mellin_nu_q(static_cast<double>(n), qp, b) -
                                1.0 / q_harmonic(n + 1, qp)));
    }
    out.push_back(make_check(tag("mellin_moment_identity_max_n0_20", q), 0.0,
                             worst, 1e-12));
  }
  {
    // Re f_q(1+iy) must stay inside [1, 1-q + sum q^k(1+q^k)] = [1, B_q].
    const double bq = omq + q / omq + q * q / (1.0 - q * q);
    double viol = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double y = -50.0 + 100.0 * static_cast<double>(i) / 199.0;
      const double re = fourier_symbol(y, qp, b).real();
      viol = std::max({viol, 1.0 - re, re - bq});
    }
    out.push_back(make_check(tag("symbol_re_bounds_grid", q), 0.0,
                             std::max(0.0, viol), 1e-12));
  }
  {
    const double y = 1e4;
    const std::complex<double> ratio =
        fourier_symbol(y, qp, b) / (omq * std::complex<double>(1.0, y));
    out.push_back(make_check(tag("symbol_asymptotic_y1e4", q), 0.0,
                             std::abs(ratio - 1.0), 0.01));
  }
  {
    const double x = 1.5 * L;
    const QuadratureResult r = fourier_inversion_oracle(x, qp, 1e5, b);
    out.push_back(make_check(tag("fourier_inversion_x1p5L", q),
                             tau_density(x, qp, table), r.value, 1e-3));
  }
  {
    double worst = 0.0;
    for (std::size_t j = 1; j <= 8; ++j) {
      for (std::size_t k = 1; k <= j; ++k) {
        const double brute = compositions_bruteforce(k, j, qp);
        worst = std::max(worst,
                         std::abs(table.value(k, j) - brute) / brute);
      }
    }
    out.push_back(make_check(tag("conv_table_vs_bruteforce_j8", q), 0.0,
                             worst, 1e-14));
  }
}

}  // namespace

std::vector<CheckResult> run_verification(const std::vector<double>& qs,
                                          VerifyLevel level,
                                          const TruncationBudget& b) {
  std::vector<CheckResult> out;

  // q-independent: the fixed point's first two entries in closed form.
  const MomentSequence fp = fixed_point_m(10);
  const double m1 = (std::sqrt(5.0) - 1.0) / 2.0;
  const double m2 =
      (std::sqrt(22.0 + 2.0 * std::sqrt(5.0)) - std::sqrt(5.0) - 1.0) / 4.0;
  out.push_back(make_check("fixed_point_m1_closed_form", m1, fp[1], 1e-15));
  out.push_back(make_check("fixed_point_m2_closed_form", m2, fp[2], 1e-15));

  for (double q : qs) checks_for_q(q, level, b, out);
  return out;
}

}  // namespace qtau
