#pragma once

// The reciprocal-partial-sum operator on moment-like sequences and its
// fixed point.
//
//   T(x)_n = 1 / (1 + x_1 + ... + x_n),  n >= 1,
//
// acting on sequences with entries in [0,1].  Iterating from the moment
// sequence of the point mass at q (a_n = q^n) gives after one step the
// Jackson-measure moments (1-q)/(1-q^{n+1}) and after two steps the
// reciprocals 1/H_{n+1}^{(q)} -- the moments of the limit density tau_q.
//
// The fixed point m satisfies m_n = 1/(1 + m_1 + ... + m_n), equivalently
// m_{n+1}^2 + m_{n+1}/m_n = 1, and is computed by the stable quadratic root
//   m_{n+1} = 2 / ( 1/m_n + sqrt(1/m_n^2 + 4) ).
//
// Sequences are compared in the product metric
//   d(x, y) = sum_{n>=1} 2^{-n} |x_n - y_n|,
// truncated at the stored length with tail bound 2^{-N}.

#include <cstddef>
#include <vector>

#include "qtau/qkernel.hpp"

namespace qtau {

// One application of T.  Entries must lie in [0,1] (throws otherwise);
// the output automatically does, and is positive and non-increasing.
std::vector<double> apply_T(const std::vector<double>& x);

// A normalized moment-like sequence: a[0] == 1, entries in (0,1],
// non-increasing.  The constructor validates and throws std::domain_error.
struct MomentSequence {
  explicit MomentSequence(std::vector<double> entries);

  const std::vector<double>& values() const { return a_; }
  double operator[](std::size_t n) const { return a_.at(n); }
  std::size_t max_index() const { return a_.size() - 1; }

 private:
  std::vector<double> a_;
};

// Fixed point m_0 = 1, m_1, ..., m_{n_max} of T (prefix-exact: each entry
// depends only on earlier ones, so truncation does not perturb it).
MomentSequence fixed_point_m(std::size_t n_max);

// Orbit start a_n = q^n (moments of the point mass at q) pushed `steps`
// times through T; steps = 0 returns the start itself.
MomentSequence orbit_from_delta_q(const QParam& qp, int steps,
                                  std::size_t n_max);

struct KDistance {
  double value;        // sum over the stored indices
  double tail_bound;   // 2^{-N}, N = number of compared entries
};

// Product-metric distance between two equal-length tails (x_1..x_N style;
// the vectors are taken to start at index 1).
KDistance k_distance(const std::vector<double>& x, const std::vector<double>& y);

// Same, skipping the shared a_0 = 1.
KDistance k_distance(const MomentSequence& x, const MomentSequence& y);

}  // namespace qtau
