#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qtau/density.hpp"
#include "support.hpp"

using namespace qtau;

static const TruncationBudget b{};

TEST_CASE("build_mu: weights and mass identity") {
  QParam qp(0.5);
  const AtomicMeasure mu = build_mu(qp, b);
  CHECK(mu.lattice_step == qp.log_inv_q());

  // w_1 = q^2/(1-q) = 1/2 at q = 1/2
  CHECK(mu.weights.at(0) == doctest::Approx(0.5).epsilon(1e-15));
  // w_2 = q^4/(1-q^2) = 1/12
  CHECK(mu.weights.at(1) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));

  // decreasing, positive
  for (std::size_t k = 0; k < mu.weights.size(); ++k) {
    CHECK(mu.weights[k] > 0.0);
    if (k > 0) CHECK(mu.weights[k] < mu.weights[k - 1]);
  }

  // certified truncation keeps the data small: ~22 atoms at q = 1/2
  CHECK(mu.weights.size() >= 20);
  CHECK(mu.weights.size() <= 25);

  // ||mu|| = c_q - q/(1-q)
  for (double q : {0.3, 0.5, 0.9}) {
    QParam p(q);
    const AtomicMeasure m = build_mu(p, b);
    CHECK(std::abs(m.total_mass() - (p.c_q() - q / (1.0 - q))) <= 1e-12);
  }
}

TEST_CASE("ConvPowerTable: structure and small closed forms") {
  QParam qp(0.5);
  const AtomicMeasure mu = build_mu(qp, b);
  const ConvPowerTable t(mu, 10);
  CHECK(t.depth() == 10);

  CHECK(t.value(0, 0) == 1.0);
  for (std::size_t j = 1; j <= 10; ++j) CHECK(t.value(0, j) == 0.0);
  for (std::size_t k = 1; k <= 10; ++k)
    for (std::size_t j = 0; j < k; ++j) CHECK(t.value(k, j) == 0.0);

  // row 1 is mu itself
  for (std::size_t j = 1; j <= 10; ++j) {
    CHECK(t.value(1, j) == doctest::Approx(mu.weights[j - 1]).epsilon(1e-15));
  }
  // diagonal M[k][k] = w_1^k
  for (std::size_t k = 1; k <= 10; ++k) {
    CHECK(t.value(k, k) ==
          doctest::Approx(std::pow(mu.weights[0], k)).epsilon(1e-14));
  }
  // frozen: M[2][3] = 2 w_1 w_2 = 2 * (1/2) * (1/12) = 1/12 at q = 1/2
  CHECK(t.value(2, 3) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
  // M[2][2] = w_1^2 = 1/4
  CHECK(t.value(2, 2) == doctest::Approx(0.25).epsilon(1e-15));

  // row partial sums never exceed ||mu||^k
  const double mass = mu.total_mass();
  for (std::size_t k = 1; k <= 6; ++k) {
    double row = 0.0;
    for (std::size_t j = k; j <= 10; ++j) row += t.value(k, j);
    CHECK(row <= std::pow(mass, static_cast<double>(k)) * (1.0 + 1e-12));
  }

  CHECK_THROWS_AS(t.value(11, 3), std::out_of_range);
  CHECK_THROWS_AS(t.value(1, 11), std::out_of_range);
}

TEST_CASE("piece_index handles exact lattice points") {
  QParam qp(0.5);
  const double L = qp.log_inv_q();
  CHECK(piece_index(0.0, qp) == 0);
  CHECK(piece_index(0.5 * L, qp) == 0);
  for (std::size_t n = 1; n <= 10; ++n) {
    CHECK(piece_index(static_cast<double>(n) * L, qp) == n);
    CHECK(piece_index(static_cast<double>(n) * L - 1e-12, qp) == n - 1);
    CHECK(piece_index((static_cast<double>(n) + 0.5) * L, qp) == n);
  }
  CHECK_THROWS_AS(piece_index(-0.1, qp), std::domain_error);
}

TEST_CASE("tau: normalization at zero and the explicit first pieces") {
  for (double q : {0.3, 0.5, 0.9}) {
    QParam qp(q);
    const ConvPowerTable t(build_mu(qp, b), 6);
    const double L = qp.log_inv_q();

    // (1-q) tau(0) = 1 exactly (the table's M[0][0] = 1 survives verbatim)
    CHECK(tau_scaled(0.0, qp, t) == 1.0);
    CHECK(tau_density(0.0, qp, t) ==
          doctest::Approx(1.0 / (1.0 - q)).epsilon(1e-15));

    // piece-by-piece closed forms, 10 points per piece
    for (int i = 0; i < 10; ++i) {
      const double s = (i + 0.5) / 10.0;
      const double x0 = s * L;
      CHECK(tau_scaled(x0, qp, t) ==
            doctest::Approx(testsupport::piece0_scaled(x0, qp)).epsilon(1e-13));
      const double x1 = (1.0 + s) * L;
      CHECK(tau_scaled(x1, qp, t) ==
            doctest::Approx(testsupport::piece1_scaled(x1, qp)).epsilon(1e-13));
      const double x2 = (2.0 + s) * L;
      CHECK(tau_scaled(x2, qp, t) ==
            doctest::Approx(testsupport::piece2_scaled(x2, qp)).epsilon(1e-13));
    }
  }

  // frozen spot values at q = 1/2 (40-digit reference, rounded)
  QParam qp(0.5);
  const ConvPowerTable t(build_mu(qp, b), 40);
  const double L = qp.log_inv_q();
  CHECK(tau_scaled(1.5 * L, qp, t) ==
        doctest::Approx(0.13673436423580662886).epsilon(1e-14));
  CHECK(tau_scaled(2.5 * L, qp, t) ==
        doctest::Approx(0.063288529814154125325).epsilon(1e-14));
  CHECK(tau_density(0.5 * L, qp, t) ==
        doctest::Approx(0.81036986086841435139).epsilon(1e-14));
  QParam q3(0.3);
  const ConvPowerTable t3(build_mu(q3, b), 6);
  CHECK(tau_scaled(0.5 * q3.log_inv_q(), q3, t3) ==
        doctest::Approx(0.38936739283139214616).epsilon(1e-14));
  QParam q9(0.9);
  const ConvPowerTable t9(build_mu(q9, b), 6);
  CHECK(tau_scaled(2.5 * q9.log_inv_q(), q9, t9) ==
        doctest::Approx(0.077890059705729549099).epsilon(1e-14));
}

TEST_CASE("tau: continuity is exact at breakpoints, p-function bound holds") {
  for (double q : {0.3, 0.5, 0.9}) {
    QParam qp(q);
    const ConvPowerTable t(build_mu(qp, b), 12);
    const double L = qp.log_inv_q();
    for (std::size_t n = 1; n <= 10; ++n) {
      const double xb = static_cast<double>(n) * L;
      const double left = tau_scaled_on_piece(xb, n - 1, qp, t);
      const double right = tau_scaled_on_piece(xb, n, qp, t);
      CHECK(left == right);   // bitwise: the entering polynomial vanishes
    }
    // 0 < (1-q) tau <= 1 on a grid
    for (int i = 0; i <= 120; ++i) {
      const double x = 12.0 * L * i / 120.0;
      const double v = tau_scaled(x, qp, t);
      CHECK(v > 0.0);
      CHECK(v <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("tau decays like e^{-x} far to the right") {
  QParam qp(0.5);
  const ConvPowerTable t(build_mu(qp, b), 36);
  const double L = qp.log_inv_q();
  const double x = 30.0 * L;
  const double v = tau_density(x, qp, t);
  // reference: e^{-x}/f_q'(0) with ~1% accuracy this deep
  const double env = std::exp(-x) / 1.4510096766772910;
  CHECK(v == doctest::Approx(env).epsilon(0.02));
  CHECK(v < 1e-9);
  CHECK_THROWS_AS(tau_scaled(40.0 * L, qp, t), std::out_of_range);
  CHECK_THROWS_AS(tau_scaled(-1.0, qp, t), std::domain_error);
}

TEST_CASE("tau_series_term: decomposition sums back to tau_scaled") {
  QParam qp(0.5);
  const ConvPowerTable t(build_mu(qp, b), 10);
  const double L = qp.log_inv_q();
  for (double x : {0.4 * L, 1.6 * L, 3.5 * L, 7.25 * L}) {
    double acc = 0.0;
    for (std::size_t k = 0; k <= piece_index(x, qp); ++k) {
      const double term = tau_series_term(x, k, qp, t);
      CHECK(term >= 0.0);
      acc += term;
    }
    CHECK(acc == doctest::Approx(tau_scaled(x, qp, t)).epsilon(1e-14));
  }
  CHECK(tau_series_term(0.5 * L, 3, qp, t) == 0.0);
}

TEST_CASE("nu_density_haar: change of variables to (0,1]") {
  QParam qp(0.5);
  const ConvPowerTable t(build_mu(qp, b), 10);
  const double L = qp.log_inv_q();

  CHECK(nu_density_haar(1.0, qp, t) ==
        doctest::Approx(tau_density(0.0, qp, t)).epsilon(1e-15));
  const double x = 1.5 * L;
  CHECK(nu_density_haar(std::exp(-x), qp, t) ==
        doctest::Approx(tau_density(x, qp, t)).epsilon(1e-13));

  CHECK_THROWS_AS(nu_density_haar(0.0, qp, t), std::domain_error);
  CHECK_THROWS_AS(nu_density_haar(1.5, qp, t), std::domain_error);
  CHECK_THROWS_AS(nu_density_haar(-0.2, qp, t), std::domain_error);
}

TEST_CASE("derivative jumps in both variables") {
  QParam qp(0.5);
  const double q = qp.q();

  // jump(1) = q^2/((1-q)(1-q)) = 1 at q = 1/2; jump(2) = q^4/((1-q^2)(1-q))
  CHECK(derivative_jump(1, qp) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(derivative_jump(2, qp) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  for (std::size_t n = 1; n <= 8; ++n) {
    const double qn = std::pow(q, static_cast<double>(n));
    const double expect = qn * qn / ((1.0 - qn) * (1.0 - q));
    CHECK(derivative_jump(n, qp) == doctest::Approx(expect).epsilon(1e-14));
    // t-variable version carries the 1/t = q^{-n} Jacobian
    CHECK(nu_derivative_jump(n, qp) ==
          doctest::Approx(expect / qn).epsilon(1e-13));
    CHECK(nu_derivative_jump(n, qp) ==
          doctest::Approx(qn / ((1.0 - qn) * (1.0 - q))).epsilon(1e-13));
  }
  CHECK_THROWS_AS(derivative_jump(0, qp), std::domain_error);
}

TEST_CASE("table evaluation is deterministic") {
  QParam qp(0.9);
  const ConvPowerTable t(build_mu(qp, b), 30);
  const double x = 17.3 * qp.log_inv_q();
  CHECK(tau_scaled(x, qp, t) == tau_scaled(x, qp, t));
}
