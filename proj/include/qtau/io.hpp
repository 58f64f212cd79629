#pragma once

// Deterministic text output: sampling the scaled density on a window,
// CSV serialization, and a self-contained SVG figure.  All numbers are
// printed with std::to_chars (shortest round-trip), so re-reading a file
// reproduces the exact doubles that were computed.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtau/density.hpp"

namespace qtau {

// Output-file trouble, mapped by the CLI to its own exit code.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shortest decimal string that parses back to exactly v.
std::string format_double(double v);

struct DensitySample {
  double x;
  double value;        // (1-q) tau_q(x), evaluated on `piece`
  std::size_t piece;
};

// Uniform grid of `grid_points` samples on [0, x_max] plus a *pair* of
// samples at every interior breakpoint nL: one as the limit from the left
// (piece n-1) and one from the right (piece n).  The two values coincide
// exactly; keeping both rows pins the continuity claim into the output and
// gives downstream consumers unambiguous piece attribution.  Sorted by
// (x, piece).
std::vector<DensitySample> sample_scaled_density(const QParam& qp,
                                                 const ConvPowerTable& table,
                                                 double x_max,
                                                 std::size_t grid_points);

// Header "x,tau_scaled,piece_index", one row per sample.
std::string density_csv(const std::vector<DensitySample>& samples);

// Standalone SVG with the polyline in *data* coordinates under an affine
// group transform (pixels never touch the numbers, so vertices can be
// compared against the evaluator losslessly).  Byte-deterministic for a
// given (q, samples, x_max).
std::string density_svg(const QParam& qp,
                        const std::vector<DensitySample>& samples,
                        double x_max);

// Write with error checking; throws IoError on any failure.
void write_file(const std::string& path, const std::string& contents);

}  // namespace qtau
