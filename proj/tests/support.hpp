#pragma once

// Shared test-side oracles and process helpers.  Everything here is kept
// deliberately independent of the library's own series machinery: brute
// products, explicit piece formulas, closed-form step integrals.

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qtau/density.hpp"
#include "qtau/qkernel.hpp"
#include "qtau/transforms.hpp"

namespace testsupport {

// (a;q)_inf by brute finite product, enough factors that the truncated tail
// is < 1e-16 relative for the grids used in tests (q <= 0.95).
inline double pochhammer_product(double a, double q, int factors = 2400) {
  double p = 1.0;
  double aqk = a;
  for (int k = 0; k < factors; ++k) {
    p *= (1.0 - aqk);
    aqk *= q;
    if (aqk == 0.0) break;
  }
  return p;
}

// The explicit scaled density on the first three pieces, written out from
// the first two atom weights: on [0,L) only the exponential survives; on
// [L,2L) the w_1 atom enters linearly; on [2L,3L) also w_2 and w_1^2/2.
inline double piece0_scaled(double x, const qtau::QParam& qp) {
  return std::exp(-(1.0 + qp.c_q()) * x);
}

inline double piece1_scaled(double x, const qtau::QParam& qp) {
  const double q = qp.q(), L = qp.log_inv_q(), r = 1.0 + qp.c_q();
  const double w1 = q * q / (1.0 - q);
  return std::exp(-r * x) + std::exp(-r * (x - L)) * w1 * (x - L);
}

inline double piece2_scaled(double x, const qtau::QParam& qp) {
  const double q = qp.q(), L = qp.log_inv_q(), r = 1.0 + qp.c_q();
  const double w1 = q * q / (1.0 - q);
  const double w2 = std::pow(q, 4) / (1.0 - q * q);
  const double u = x - 2.0 * L;
  return std::exp(-r * x) + std::exp(-r * (x - L)) * w1 * (x - L) +
         std::exp(-r * u) * (w2 * u + 0.5 * w1 * w1 * u * u);
}

// int_0^inf e^{-zt} h_q(t) dt, using that h_q is constant on each lattice
// step: the integral is an exact sum of h_q(nL)(e^{-znL} - e^{-z(n+1)L})/z.
inline double laplace_of_h_q(double z, const qtau::QParam& qp,
                             const qtau::TruncationBudget& b) {
  const double L = qp.log_inv_q();
  double total = 0.0;
  for (int n = 0; n < 200000; ++n) {
    const double t0 = n * L;
    const double hn = qtau::h_q(t0, qp, b);
    if (hn == 0.0) break;
    const double e0 = std::exp(-z * t0);
    const double e1 = std::exp(-z * (t0 + L));
    total += hn * (e0 - e1) / z;
    if (hn * e1 / z < 1e-20) break;
  }
  return total;
}

struct ProcessResult {
  int exit_code;
  std::string out;
};

// Run a command, capture stdout, return the exit code.  stderr is routed to
// /dev/null so expected-failure tests don't spam the log.
inline ProcessResult run_process(const std::string& cmd) {
  const std::string full = cmd + " 2>/dev/null";
  FILE* p = ::popen(full.c_str(), "r");
  if (p == nullptr) throw std::runtime_error("popen failed: " + cmd);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  const int status = ::pclose(p);
  int code = -1;
  if (status >= 0 && WIFEXITED(status)) code = WEXITSTATUS(status);
  return {code, out};
}

inline std::string shell_quote(const std::string& s) {
  std::string r = "'";
  for (char c : s) {
    if (c == '\'') r += "'\\''";
    else r += c;
  }
  r += "'";
  return r;
}

// Pull the vertices out of the SVG's single polyline; they are in data
// coordinates by construction.
inline std::vector<std::pair<double, double>> parse_svg_polyline(
    const std::string& svg) {
  const std::string key = "points=\"";
  const auto beg = svg.find(key);
  if (beg == std::string::npos) throw std::runtime_error("no polyline points");
  const auto end = svg.find('"', beg + key.size());
  std::string body = svg.substr(beg + key.size(), end - beg - key.size());
  std::vector<std::pair<double, double>> pts;
  const char* s = body.c_str();
  char* next = nullptr;
  while (*s != '\0') {
    const double x = std::strtod(s, &next);
    if (next == s) break;
    s = next;
    while (*s == ',' || *s == ' ') ++s;
    const double y = std::strtod(s, &next);
    if (next == s) break;
    s = next;
    while (*s == ' ') ++s;
    pts.emplace_back(x, y);
  }
  return pts;
}

// Split CSV text into rows of fields.
inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  for (char c : text) {
    if (c == ',') {
      row.push_back(field);
      field.clear();
    } else if (c == '\n') {
      row.push_back(field);
      field.clear();
      rows.push_back(row);
      row.clear();
    } else {
      field += c;
    }
  }
  if (!field.empty() || !row.empty()) {
    row.push_back(field);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace testsupport
