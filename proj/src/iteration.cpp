#include "qtau/iteration.hpp"

#include <cmath>

#include "internal.hpp"

namespace qtau {

using detail::KahanSum;

std::vector<double> apply_T(const std::vector<double>& x) {
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::domain_error("apply_T: entries must lie in [0,1]");
    }
  }
  std::vector<double> out;
  out.reserve(x.size());
  KahanSum s;
  s.add(1.0);
  for (double v : x) {
    s.add(v);
    out.push_back(1.0 / s.value());
  }
  return out;
}

MomentSequence::MomentSequence(std::vector<double> entries) : a_(std::move(entries)) {
  if (a_.empty() || a_[0] != 1.0) {
    throw std::domain_error("MomentSequence: a_0 must be 1");
  }
  for (std::size_t n = 1; n < a_.size(); ++n) {
    if (!(a_[n] > 0.0 && a_[n] <= a_[n - 1])) {
      throw std::domain_error(
          "MomentSequence: entries must be positive and non-increasing");
    }
  }
}

MomentSequence fixed_point_m(std::size_t n_max) {
  std::vector<double> a;
  a.reserve(n_max + 1);
  a.push_back(1.0);
  // s_n = 1 + m_1 + ... + m_n carried along; the next entry is the stable
  // root of m^2 + m s_n = 1, i.e. m = 2 / (s_n + sqrt(s_n^2 + 4)).
  KahanSum s;
  s.add(1.0);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double sn = s.value();
    const double m = 2.0 / (sn + std::sqrt(sn * sn + 4.0));
    a.push_back(m);
    s.add(m);
  }
  return MomentSequence(std::move(a));
}

MomentSequence orbit_from_delta_q(const QParam& qp, int steps,
                                  std::size_t n_max) {
  if (steps < 0) {
    throw std::domain_error("orbit_from_delta_q: need steps >= 0");
  }
  std::vector<double> x(n_max);
  double qn = 1.0;
  for (std::size_t n = 0; n < n_max; ++n) {
    qn *= qp.q();
    x[n] = qn;          // x[n] holds a_{n+1} = q^{n+1}
  }
  for (int s = 0; s < steps; ++s) x = apply_T(x);
  std::vector<double> a;
  a.reserve(n_max + 1);
  a.push_back(1.0);
  a.insert(a.end(), x.begin(), x.end());
  return MomentSequence(std::move(a));
}

KDistance k_distance(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw std::domain_error("k_distance: sequences must have equal length");
  }
  KahanSum s;
  double w = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    w *= 0.5;                       // weight 2^{-(i+1)} for the entry x_{i+1}
    s.add(w * std::abs(x[i] - y[i]));
  }
  return {s.value(), std::ldexp(1.0, -static_cast<int>(x.size()))};
}

KDistance k_distance(const MomentSequence& x, const MomentSequence& y) {
  const auto& a = x.values();
  const auto& b = y.values();
  if (a.size() != b.size()) {
    throw std::domain_error("k_distance: sequences must have equal length");
  }
  std::vector<double> ta(a.begin() + 1, a.end());
  std::vector<double> tb(b.begin() + 1, b.end());
  return k_distance(ta, tb);
}

}  // namespace qtau
