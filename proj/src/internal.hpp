#pragma once

// Shared bits for the library's .cpp files only (not installed).

#include <cmath>
#include <cstddef>
#include <string>

#include "qtau/qkernel.hpp"

namespace qtau::detail {

// Compensated accumulator; the long tails near q -> 1 (c_q at q = 0.9999
// runs ~5e5 terms) lose a couple of digits with naive summation.
struct KahanSum {
  double s = 0.0;
  double c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

// Smallest integer K >= count_hint, checked against the term budget.
// `count_hint` comes from solving a tail bound for K and may be negative
// (the bound already holds at K = minimum).
inline std::size_t checked_cutoff(double count_hint, std::size_t minimum,
                                  const TruncationBudget& b, const char* what) {
  double k = std::ceil(count_hint);
  if (!(k >= static_cast<double>(minimum))) k = static_cast<double>(minimum);
  if (k > static_cast<double>(b.max_terms)) {
    throw BudgetExceeded(std::string(what) + ": certified cutoff needs " +
                         std::to_string(static_cast<unsigned long long>(k)) +
                         " terms, budget allows " + std::to_string(b.max_terms));
  }
  return static_cast<std::size_t>(k);
}

}  // namespace qtau::detail
